"""High-precision complex numerics: gamma, 2F1 evaluation, root finding.

Everything runs inside an ``EvalContext`` carrying its own mpmath context
pinned to a mantissa precision (default 192 bits), so precision is passed
explicitly and never leaks through global state.  Conventions that matter:

* every fractional power takes the principal branch (log with imaginary
  part in (-pi, pi]); arguments on [1, oo) are rejected, not guessed;
* error estimates are heuristic last-term bounds with path-specific
  amplification, adequate for the wide margin between working precision
  and the verification tolerances, and are not certified enclosures.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from mpmath.ctx_mp import MPContext

from .errors import (
    BranchCutError,
    DegenerateConnectionError,
    GammaPoleError,
    NonConvergenceError,
    ParameterError,
)
from .poly import Poly

GUARD_BITS = 32
# A path is usable when its series needs at most this many terms; the
# effective argument modulus can approach 1 (large roots push every
# transformation that way), so usability is budgeted rather than cut off
# at a fixed modulus.
_MAX_TERMS_CAP = 300_000


class EvalContext:
    """An isolated mpmath context at a fixed mantissa precision."""

    def __init__(self, precision: int = 192):
        if not isinstance(precision, int) or precision < 24:
            raise ParameterError(f"precision must be an integer >= 24 bits: {precision}")
        self.precision = precision
        ctx = MPContext()
        ctx.prec = precision
        self.mp = ctx

    @property
    def eps(self):
        return self.mp.mpf(2) ** (-self.precision)

    def workprec(self, extra: int = GUARD_BITS):
        return self.mp.workprec(self.precision + extra)

    def to_mp(self, x):
        """Convert ints, Fractions, floats, complex, mpf/mpc to this context."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / self.mp.mpf(x.denominator)
        if isinstance(x, complex):
            return self.mp.mpc(x.real, x.imag)
        return self.mp.convert(x)

    def decimal_digits(self) -> int:
        return int(self.precision * 0.30103) + 2

    def nstr(self, x, digits: int | None = None) -> str:
        return self.mp.nstr(
            x, digits if digits is not None else self.decimal_digits(),
            strip_zeros=True,
        )


def _as_fraction(x):
    """Exact rational mirror of x, or None when x is floating-point."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def _near_int(mp, z, bits: int):
    """round(z) if z is within 2^-bits of an integer (else None)."""
    if mp.im(z) != 0 and abs(mp.im(z)) > mp.mpf(2) ** (-bits):
        return None
    re = mp.re(z)
    n = mp.nint(re)
    if abs(re - n) <= mp.mpf(2) ** (-bits):
        return int(n)
    return None


def _nonpos_int_of(mp, exact, numeric, bits: int):
    """The value as a nonpositive integer if it is one (exactly when an
    exact mirror is available, within tolerance otherwise)."""
    if exact is not None:
        if exact.denominator == 1 and exact <= 0:
            return int(exact)
        return None
    n = _near_int(mp, numeric, bits)
    return n if n is not None and n <= 0 else None


@dataclass
class EvalResult:
    """A numeric value with a heuristic absolute error bound and the tag
    of the evaluation path that produced it."""

    value: object
    est_error: object
    path: str


# ---------------------------------------------------------------------------
# gamma

_SPOUGE_CACHE: dict = {}


def _spouge_coefficients(terms: int, mp):
    # Cached as raw mantissa tuples, never as mpf objects: an mpf is bound
    # to the context that created it, and mixed-context arithmetic silently
    # rounds at the foreign context's current precision.
    key = (terms, mp.prec)
    raw = _SPOUGE_CACHE.get(key)
    if raw is None:
        coeffs = [mp.sqrt(2 * mp.pi)]
        fact = mp.mpf(1)
        for k in range(1, terms):
            ak = mp.mpf(terms - k)
            coeffs.append(
                (-1) ** (k - 1) * ak ** (k - mp.mpf(1) / 2) * mp.exp(ak) / fact
            )
            fact *= k
        raw = tuple(x._mpf_ for x in coeffs)
        _SPOUGE_CACHE[key] = raw
    return [mp.make_mpf(t) for t in raw]


def _spouge_gamma(z, mp, terms: int):
    """Spouge series for gamma, valid for Re z >= 1/2.

    Must run with roughly 1.9 bits of headroom per term beyond the target
    precision: the alternating coefficients peak near 2^(1.84 terms) while
    the sum is of moderate size, so that many leading bits cancel."""
    coeffs = _spouge_coefficients(terms, mp)
    s = coeffs[0]
    for k in range(1, terms):
        s += coeffs[k] / (z - 1 + k)
    t = z + terms - 1
    return mp.power(t, z - mp.mpf(1) / 2) * mp.exp(-t) * s


def gamma_c(z, ctx: EvalContext | None = None):
    """Gamma on the complex plane: Spouge series, with the reflection
    formula for Re z < 1/2.  The term count follows from the target
    precision (truncation error decays like (2 pi)^-terms) and the series
    runs with enough extra working precision to absorb its internal
    cancellation.  Arguments within 2^(-precision/2) of a nonpositive
    integer are rejected as poles."""
    ctx = ctx or EvalContext()
    mp = ctx.mp
    zz = ctx.to_mp(z)
    near = _near_int(mp, zz, ctx.precision // 2)
    if near is not None and near <= 0:
        raise GammaPoleError(f"gamma pole at {ctx.nstr(zz)}")
    deliver = ctx.precision + 64
    terms = int(deliver * 0.3775) + 8
    # headroom: the alternating sum peaks near 2^(1.84 terms) while its
    # value shrinks with |Im z| like exp(-pi |Im z| / 2)
    cancel_headroom = int(1.9 * terms) + 16 + int(4 * abs(mp.im(zz))) + 16
    with mp.workprec(deliver + cancel_headroom):
        zz = ctx.to_mp(z)
        if mp.re(zz) < mp.mpf(1) / 2:
            value = mp.pi / (mp.sinpi(zz) * _spouge_gamma(1 - zz, mp, terms))
        else:
            value = _spouge_gamma(zz, mp, terms)
        if mp.im(zz) == 0:
            value = mp.re(value)
    with mp.workprec(deliver):
        return +value


def rgamma_c(z, ctx: EvalContext | None = None):
    """1/Gamma, defined as exact 0 at (near-)nonpositive-integer poles."""
    ctx = ctx or EvalContext()
    zz = ctx.to_mp(z)
    if _nonpos_int_of(ctx.mp, _as_fraction(z), zz, ctx.precision // 2) is not None:
        return ctx.mp.mpf(0)
    return 1 / gamma_c(z, ctx)


# ---------------------------------------------------------------------------
# 2F1

_PATH_DIRECT = "direct-series"
_PATH_PFAFF_A = "pfaff-a"
_PATH_PFAFF_B = "pfaff-b"
_PATH_EULER = "euler"
_PATH_CONNECTION = "connection-1mz"
_PATH_UNSUPPORTED = "unsupported"

KNOWN_PATHS = (
    _PATH_DIRECT,
    _PATH_PFAFF_A,
    _PATH_PFAFF_B,
    _PATH_EULER,
    _PATH_CONNECTION,
)


def _series_2f1(mp, a, b, c, z, target, max_terms):
    """Sum the defining series by the term recurrence.

    Returns (total, last_term_abs, n_terms, peak_abs); stops after three
    consecutive terms below target * |total| so an incidental zero term
    cannot end the sum early."""
    one = mp.mpf(1)
    total = mp.mpc(one)
    term = mp.mpc(one)
    peak = one
    tiny = mp.mpf(2) ** (-mp.prec * 4)
    small = 0
    n = 0
    last = mp.mpf(0)
    while n < max_terms:
        term = term * ((a + n) * (b + n)) / ((c + n) * (n + 1)) * z
        total += term
        n += 1
        at = abs(term)
        tt = abs(total)
        if tt > peak:
            peak = tt
        last = at
        # terms below target * peak cannot move the sum beyond the
        # roundoff it has already absorbed (a cancelling sum may have
        # |total| far below peak, so the first test alone could stall)
        if at <= target * (tt + tiny) or at <= target * peak:
            small += 1
            if small >= 3:
                return total, last, n, peak
        else:
            small = 0
    raise NonConvergenceError(
        f"2F1 series did not converge within {max_terms} terms", best=total
    )


def _max_terms_for(modulus, prec: int, terminating: int | None):
    """Term budget for a series at the given argument modulus, or None
    when convergence to full precision is out of budget.

    The 1.3 factor plus additive headroom covers the initial hump and the
    polynomial growth of the coefficient ratio that a pure geometric
    estimate ignores."""
    if terminating is not None:
        return terminating + 8
    m = float(modulus)
    if m <= 0:
        return 16
    if m >= 1 - 2**-14:
        return None
    need = int(1.3 * (prec + 64) * math.log(2) / -math.log(m)) + 256
    return need if need <= _MAX_TERMS_CAP else None


def terminating_exact_value(ea, eb, ec, ez) -> Fraction:
    """Exact rational value of a terminating series at rational z."""
    if not (eb.denominator == 1 and eb <= 0):
        ea, eb = eb, ea
    m = -int(eb)
    total = Fraction(1)
    term = Fraction(1)
    for n in range(m):
        term = term * (ea + n) * (eb + n) / ((ec + n) * (n + 1)) * ez
        total += term
        if term == 0:
            break
    return total


def hyp2f1_num(
    a, b, c, z,
    ctx: EvalContext | None = None,
    method: str | None = None,
    _allow_connection: bool = True,
) -> EvalResult:
    """Evaluate F(a, b, c; z) at the context precision.

    The path is chosen to minimize the effective argument modulus among
    the direct series, the two z/(z-1) maps, and the 1-z connection
    formula; the direct series is kept whenever |z| <= 0.7.  The two
    series inside the connection formula are themselves evaluated by the
    best of the direct and Pfaff routes, so the connection path reaches an
    effective argument of min(|1-z|, |1-1/z|), which covers the half-plane
    Re z > 1/2 where neither |z| nor |z/(z-1)| falls below 1.  Terminating
    series (including ones that terminate only after a transformation)
    are summed as finite, exact sums regardless of |z|.  ``method`` forces
    a specific path, mainly for cross-path agreement tests.
    """
    ctx = ctx or EvalContext()
    mp = ctx.mp
    prec = ctx.precision
    ea, eb, ec, ez = _as_fraction(a), _as_fraction(b), _as_fraction(c), _as_fraction(z)

    with ctx.workprec(GUARD_BITS + 32):
        za, zb, zc, zz = ctx.to_mp(a), ctx.to_mp(b), ctx.to_mp(c), ctx.to_mp(z)
        target = mp.mpf(2) ** (-(prec + GUARD_BITS))

        m_a = _nonpos_int_of(mp, ea, za, prec // 2)
        m_b = _nonpos_int_of(mp, eb, zb, prec // 2)
        m_term = None
        if m_a is not None:
            m_term = -m_a
        if m_b is not None:
            m_term = -m_b if m_term is None else min(m_term, -m_b)

        c_pole = _nonpos_int_of(mp, ec, zc, prec // 2)
        if c_pole is not None and (m_term is None or m_term > -c_pole):
            raise ParameterError(
                f"lower parameter c = {ctx.nstr(zc)} is a nonpositive integer "
                "and the series does not terminate before the pole"
            )

        if m_term is not None and method is None:
            if None not in (ea, eb, ec, ez):
                exact = terminating_exact_value(ea, eb, ec, ez)
                val = ctx.to_mp(exact)
                return EvalResult(+val, abs(val) * ctx.eps * 4, _PATH_DIRECT)
            total, last, n, peak = _series_2f1(
                mp, za, zb, zc, zz, target, m_term + 8
            )
            value = _demote_real(mp, total)
            return EvalResult(+value, peak * ctx.eps * (n + 4), _PATH_DIRECT)

        if zz == 0:
            return EvalResult(mp.mpf(1), ctx.eps, _PATH_DIRECT)

        on_cut = (
            abs(mp.im(zz)) <= mp.mpf(2) ** (-prec + 8) * (1 + abs(mp.re(zz)))
            and mp.re(zz) >= 1 - mp.mpf(2) ** -40
        )
        if on_cut and m_term is None:
            raise BranchCutError(
                f"z = {ctx.nstr(zz)} lies on the branch cut [1, oo)"
            )

        w = zz / (zz - 1)
        mod_direct = abs(zz)
        mod_pfaff = abs(w)
        # the connection's inner series fall back to their own Pfaff map,
        # whose argument is (1-z)/(-z) = 1 - 1/z
        mod_conn = min(abs(1 - zz), abs(1 - 1 / zz))

        # a transformed series terminates when c-a or c-b is a nonpositive
        # integer (the directly terminating cases were handled above)
        t_cb = _nonpos_int_of(mp, None if None in (ec, eb) else ec - eb, zc - zb, prec // 2)
        t_ca = _nonpos_int_of(mp, None if None in (ec, ea) else ec - ea, zc - za, prec // 2)

        cab = None if None in (ec, ea, eb) else ec - ea - eb
        conn_degenerate = (
            cab.denominator == 1 if cab is not None
            else _near_int(mp, zc - za - zb, 40) is not None
        )

        if method is not None:
            path = method
        elif t_cb is not None or t_ca is not None:
            path = _PATH_PFAFF_A if t_cb is not None else _PATH_PFAFF_B
        elif mod_direct <= mp.mpf(7) / 10:
            path = _PATH_DIRECT
        else:
            options = []
            if _max_terms_for(mod_direct, prec, None) is not None:
                options.append((mod_direct, _PATH_DIRECT))
            if _max_terms_for(mod_pfaff, prec, None) is not None:
                pf = (
                    _PATH_PFAFF_A
                    if abs(mp.re(za)) <= abs(mp.re(zb))
                    else _PATH_PFAFF_B
                )
                options.append((mod_pfaff, pf))
            conn_usable = (
                _allow_connection
                and _max_terms_for(mod_conn, prec, None) is not None
            )
            if conn_usable and not conn_degenerate:
                options.append((mod_conn, _PATH_CONNECTION))
            if not options:
                if conn_usable and conn_degenerate:
                    raise DegenerateConnectionError(
                        "only the 1-z connection would converge, but c-a-b "
                        "is (within tolerance of) an integer"
                    )
                return EvalResult(mp.nan, mp.inf, _PATH_UNSUPPORTED)
            options.sort(key=lambda t: t[0])
            path = options[0][1]

        if path == _PATH_DIRECT:
            max_terms = _max_terms_for(mod_direct, prec, m_term)
            if max_terms is None:
                raise ParameterError("direct series does not converge at this z")
            total, last, n, peak = _series_2f1(mp, za, zb, zc, zz, target, max_terms)
            est = _tail_estimate(mp, last, mod_direct, peak, n, prec)
            value = total
        elif path == _PATH_EULER:
            pref = _principal_power(mp, 1 - zz, zc - za - zb)
            inner_m = [-t for t in (t_ca, t_cb) if t is not None]
            max_terms = _max_terms_for(
                mod_direct, prec, min(inner_m) if inner_m else None
            )
            if max_terms is None:
                raise ParameterError("euler-transformed series does not converge")
            # transformed parameters from the exact mirrors where possible:
            # a terminating c-a or c-b must reach the series as an exact
            # integer, not as a rounding-contaminated difference
            pa = _exact_param(ctx, _frac_or_none(ec, ea), zc - za)
            pb = _exact_param(ctx, _frac_or_none(ec, eb), zc - zb)
            total, last, n, peak = _series_2f1(mp, pa, pb, zc, zz, target, max_terms)
            est = abs(pref) * _tail_estimate(mp, last, mod_direct, peak, n, prec)
            value = pref * total
        elif path in (_PATH_PFAFF_A, _PATH_PFAFF_B):
            if path == _PATH_PFAFF_A:
                pref = _principal_power(mp, 1 - zz, -za)
                pa = za
                pb = _exact_param(ctx, _frac_or_none(ec, eb), zc - zb)
                t_inner = t_cb
            else:
                pref = _principal_power(mp, 1 - zz, -zb)
                pa = zb
                pb = _exact_param(ctx, _frac_or_none(ec, ea), zc - za)
                t_inner = t_ca
            max_terms = _max_terms_for(
                mod_pfaff, prec, None if t_inner is None else -t_inner
            )
            if max_terms is None:
                raise ParameterError("pfaff-transformed series does not converge")
            total, last, n, peak = _series_2f1(mp, pa, pb, zc, w, target, max_terms)
            est = abs(pref) * _tail_estimate(mp, last, mod_pfaff, peak, n, prec)
            value = pref * total
        elif path == _PATH_CONNECTION:
            if conn_degenerate:
                raise DegenerateConnectionError(
                    "c-a-b is (within tolerance of) an integer; the two-term "
                    "connection formula degenerates"
                )
            if _max_terms_for(mod_conn, prec, None) is None:
                raise ParameterError("connection series does not converge")
            u = 1 - zz
            eu = None if ez is None else 1 - ez
            coef1 = (
                gamma_c(zc, ctx) * gamma_c(zc - za - zb, ctx)
                * rgamma_c(_pref_exact(ec, ea, zc, za), ctx)
                * rgamma_c(_pref_exact(ec, eb, zc, zb), ctx)
            )
            coef2 = (
                _principal_power(mp, u, zc - za - zb)
                * gamma_c(zc, ctx) * gamma_c(za + zb - zc, ctx)
                * rgamma_c(ea if ea is not None else za, ctx)
                * rgamma_c(eb if eb is not None else zb, ctx)
            )
            part1 = part2 = mp.mpf(0)
            e1 = e2 = mp.mpf(0)
            uu = eu if eu is not None else u
            if coef1 != 0:
                inner1 = hyp2f1_num(
                    _pick(ea, za), _pick(eb, zb),
                    _pick(None if cab is None else 1 - cab, za + zb - zc + 1),
                    uu, ctx, _allow_connection=False,
                )
                part1 = coef1 * inner1.value
                e1 = abs(coef1) * inner1.est_error
            if coef2 != 0:
                inner2 = hyp2f1_num(
                    _pick(_frac_or_none(ec, ea), zc - za),
                    _pick(_frac_or_none(ec, eb), zc - zb),
                    _pick(None if cab is None else 1 + cab, zc - za - zb + 1),
                    uu, ctx, _allow_connection=False,
                )
                part2 = coef2 * inner2.value
                e2 = abs(coef2) * inner2.est_error
            value = part1 + part2
            est = e1 + e2 + (abs(part1) + abs(part2)) * ctx.eps * 16
        else:
            raise ParameterError(f"unknown evaluation method {method!r}")

        if mp.im(zz) == 0 and mp.im(za) == 0 and mp.im(zb) == 0 and mp.im(zc) == 0:
            if mp.re(zz) < 1:
                value = _demote_real(mp, value)
        return EvalResult(+value, +est, path)


def _pref_exact(e1, e2, z1, z2):
    """c - a as a Fraction when both mirrors exist, else numeric."""
    if e1 is not None and e2 is not None:
        return e1 - e2
    return z1 - z2


def _frac_or_none(e1, e2):
    return None if None in (e1, e2) else e1 - e2


def _exact_param(ctx, exact, numeric):
    return ctx.to_mp(exact) if exact is not None else numeric


def _pick(exact, numeric):
    """Prefer the exact mirror so nested calls keep exact decisions."""
    return exact if exact is not None else numeric


def _demote_real(mp, value):
    if mp.im(value) == 0:
        return mp.re(value)
    return value


def _principal_power(mp, base, expo):
    """base**expo on the principal branch; exact for integer exponents."""
    if mp.im(expo) == 0:
        e = mp.re(expo)
        if e == mp.nint(e) and abs(e) < 1 << 30:
            return mp.power(base, int(e))
    return mp.power(base, expo)


def _tail_estimate(mp, last, modulus, peak, n_terms, prec):
    """Last-term tail bound plus accumulated roundoff, as an absolute error."""
    if modulus < 1:
        geom = last * modulus / (1 - modulus)
    else:
        geom = last
    return geom + peak * mp.mpf(n_terms + 8) * mp.mpf(2) ** (-mp.prec)


# ---------------------------------------------------------------------------
# polynomial roots

@dataclass
class RootSet:
    """Roots of an exact polynomial, clustered by multiplicity.

    len(roots) == number of distinct clusters; multiplicities sum to the
    degree; residual_bound majorizes |P(root)| over all reported roots.
    """

    roots: tuple
    multiplicities: tuple
    source_poly: Poly
    residual_bound: object

    def total_count(self) -> int:
        return sum(self.multiplicities)


def _horner_pair(coeffs, x):
    """(P(x), P'(x)) with ascending mp coefficients."""
    p = coeffs[-1]
    dp = p * 0
    for c in reversed(coeffs[:-1]):
        dp = dp * x + p
        p = p * x + c
    return p, dp


def find_roots(poly: Poly, precision: int = 192) -> RootSet:
    """All complex roots by simultaneous Aberth iteration.

    Runs at an elevated working precision, polishes simple roots with
    Newton steps, enforces conjugate symmetry (the inputs here always have
    rational coefficients), and clusters near-coincident roots into
    multiplicities at the 2^(-precision/3) scale.
    """
    if poly.degree is None or poly.degree < 1:
        raise ParameterError("root finding needs a polynomial of degree >= 1")
    work = EvalContext(precision + GUARD_BITS)
    mp = work.mp
    monic = poly.monic()
    n = monic.degree
    coeffs = [work.to_mp(c) for c in monic.coeffs]

    radius = 1 + max(abs(c) for c in coeffs[:-1])
    roots = [
        radius * mp.expjpi(mp.mpf(2 * k) / n + mp.mpf(1) / (2 * n + 1))
        for k in range(n)
    ]
    tol = mp.mpf(2) ** (-(precision // 2) - 8)
    converged = False
    for _ in range(400):
        max_step = mp.mpf(0)
        for i in range(n):
            x = roots[i]
            p, dp = _horner_pair(coeffs, x)
            if p == 0:
                continue
            if dp == 0:
                roots[i] = x + tol * (1 + abs(x))
                max_step = mp.inf
                continue
            newton = p / dp
            accum = mp.mpc(0)
            for j in range(n):
                if j != i:
                    accum += 1 / (x - roots[j])
            denom = 1 - newton * accum
            step = newton if denom == 0 else newton / denom
            roots[i] = x - step
            rel = abs(step) / (1 + abs(roots[i]))
            if rel > max_step:
                max_step = rel
        if max_step <= tol:
            converged = True
            break
    if not converged:
        raise NonConvergenceError(
            f"Aberth iteration did not converge for {poly}", best=tuple(roots)
        )

    real_tol = mp.mpf(2) ** (-(precision // 2))
    roots = [
        mp.mpc(mp.re(r), 0) if abs(mp.im(r)) <= real_tol * (1 + abs(r)) else r
        for r in roots
    ]
    roots = _pair_conjugates(mp, roots, real_tol)

    cluster_tol = mp.mpf(2) ** (-(precision // 3))
    clusters = _cluster(mp, roots, cluster_tol)

    polished = []
    for center, mult in clusters:
        if mult == 1:
            x = center
            for _ in range(4):
                p, dp = _horner_pair(coeffs, x)
                if dp == 0 or p == 0:
                    break
                x = x - p / dp
            if abs(mp.im(x)) <= real_tol * (1 + abs(x)):
                x = mp.mpc(mp.re(x), 0)
            polished.append((x, 1))
        else:
            polished.append((center, mult))
    polished.sort(key=lambda t: (mp.re(t[0]), mp.im(t[0])))

    pcoeffs = [work.to_mp(c) for c in poly.coeffs]
    residual = mp.mpf(0)
    for x, _ in polished:
        r = abs(_horner_pair(pcoeffs, x)[0])
        if r > residual:
            residual = r
    return RootSet(
        roots=tuple(x for x, _ in polished),
        multiplicities=tuple(m for _, m in polished),
        source_poly=poly,
        residual_bound=residual,
    )


def _pair_conjugates(mp, roots, real_tol):
    """Replace near-conjugate pairs by exact conjugates (real coefficients
    force the root set to be symmetric; the iteration only gets close)."""
    out = []
    upper = [r for r in roots if mp.im(r) > 0]
    lower = [r for r in roots if mp.im(r) < 0]
    out.extend(r for r in roots if mp.im(r) == 0)
    used = [False] * len(lower)
    for u in upper:
        best_j, best_d = None, None
        for j, l in enumerate(lower):
            if used[j]:
                continue
            d = abs(u - mp.conj(l))
            if best_d is None or d < best_d:
                best_j, best_d = j, d
        if best_j is not None and best_d <= mp.sqrt(real_tol) * (1 + abs(u)):
            used[best_j] = True
            w = (u + mp.conj(lower[best_j])) / 2
            out.extend([w, mp.conj(w)])
        else:
            out.append(u)
    out.extend(l for j, l in enumerate(lower) if not used[j])
    return out


def _cluster(mp, roots, tol):
    """Greedy clustering; returns (mean, size) per cluster."""
    remaining = list(roots)
    clusters = []
    while remaining:
        seed = remaining.pop(0)
        members = [seed]
        changed = True
        while changed:
            changed = False
            for r in remaining[:]:
                if any(abs(r - m) <= tol * (1 + abs(m)) for m in members):
                    members.append(r)
                    remaining.remove(r)
                    changed = True
        mean = sum(members, mp.mpc(0)) / len(members)
        if all(mp.im(m) == 0 for m in members):
            mean = mp.mpc(mp.re(mean), 0)
        clusters.append((mean, len(members)))
    return clusters
