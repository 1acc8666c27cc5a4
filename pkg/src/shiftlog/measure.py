"""Assemble the constants Delta, Q, E and the bound mu_eff <= 1/lambda with
lambda = 1/delta - log Q / (d log E), together with every hypothesis check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .asymptotics import char_roots
from .balls import RealBall
from .exact import LogExactConstant, as_rational, euler_phi, nu
from .inputs import BetaSpec, ResolvedBeta
from .numfield import (
    PRECISION_CAP,
    AlgebraicNumber,
    CertificationError,
    count_roots_in_unit_interval,
    den_algebraic,
)

DEFAULT_START_PREC = 256
DEFAULT_MU_WIDTH = 1e-4

CERTIFIED = "certified"
HYPOTHESIS_FAILED = "hypothesis_failed"
LAMBDA_NOT_POSITIVE = "lambda_not_positive"
PRECISION_CAP_HIT = "precision_cap"


def compute_delta_degree(beta: AlgebraicNumber) -> Fraction:
    """d for a real embedding, d/2 otherwise.

    Reality is exact: real roots are counted by Sturm and their balls are
    centred on the real axis, so a centred ball holds a real root.
    """
    d = beta.degree
    return Fraction(d) if beta.is_real() else Fraction(d, 2)


def compute_Delta(den_beta: int, x) -> LogExactConstant:
    """den(beta) * exp(den(x)/phi(den(x))) * nu(x)."""
    x = as_rational(x)
    q = x.denominator
    return LogExactConstant(den_beta, Fraction(q, euler_phi(q))) * nu(x)


@dataclass(frozen=True)
class HypothesisFlags:
    abs_beta_gt1: bool | None
    x_in_range: bool
    rho_distinct_all_conjugates: bool | None
    lambda_positive: bool | None = None

    def failures(self) -> list[str]:
        out = []
        if self.abs_beta_gt1 is False:
            out.append("|beta| > 1 fails")
        if not self.x_in_range:
            out.append("x must lie in [0, 1)")
        if self.rho_distinct_all_conjugates is False:
            out.append("a conjugate of beta lies in [0, 1]")
        return out

    def to_dict(self) -> dict:
        return {
            "absBetaGT1": self.abs_beta_gt1,
            "xInRange": self.x_in_range,
            "rhoDistinctAllConjugates": self.rho_distinct_all_conjugates,
            "lambdaPositive": self.lambda_positive,
        }


def check_hypotheses(beta: AlgebraicNumber, x) -> HypothesisFlags:
    """|beta| > 1 (None while the ball straddles the unit circle), 0 <= x < 1,
    and no conjugate in [0, 1] (exact Sturm count)."""
    x = as_rational(x)
    sel = beta.selected
    if sel.abs_lower() > 1:
        gt1 = True
    elif sel.abs_upper() <= 1:
        gt1 = False
    else:
        gt1 = None
    return HypothesisFlags(gt1, 0 <= x < 1, count_roots_in_unit_interval(beta.min_poly) == 0)


def compute_lambda_mu(
    log_Q: RealBall, log_E: RealBall, d: int, delta: Fraction
) -> tuple[RealBall, RealBall | None]:
    lam = RealBall.from_rational(1 / delta, log_Q.prec) - log_Q / (log_E * d)
    mu = 1 / lam if lam.gt(0) else None
    return lam, mu


@dataclass(frozen=True)
class MeasureCertificate:
    status: str
    message: str
    beta: dict
    x: Fraction
    d: int | None = None
    delta: Fraction | None = None
    den_beta: int | None = None
    Delta: LogExactConstant | None = None
    conjugates: list = field(default_factory=list)
    selected_index: int | None = None
    rho2: list = field(default_factory=list)
    log_Delta: RealBall | None = None
    log_Q: RealBall | None = None
    log_E: RealBall | None = None
    lam: RealBall | None = None
    mu: RealBall | None = None
    flags: HypothesisFlags | None = None
    precision_bits: int | None = None
    multiplicity: int = 1
    irreducibility_assumed: bool = False

    @property
    def ok(self) -> bool:
        return self.status == CERTIFIED


def _mu_rel_width(mu: RealBall) -> float:
    return float(2 * mu.rad / abs(mu.mid))


def _evaluate(resolved: ResolvedBeta, x: Fraction, prec: int, base: dict):
    beta = resolved.number
    delta = compute_delta_degree(beta)
    d = beta.degree
    den = den_algebraic(beta.min_poly)
    assert beta.min_poly.primitive().int_coeffs()[-1] % den == 0
    Delta = compute_Delta(den, x)
    log_Delta = Delta.log(prec)
    roots = [char_roots(z.with_prec(prec)) for z in beta.conjugates]
    rho2 = [cr.rho2 for cr in roots]
    log_Q = log_Delta
    for r in rho2:
        log_Q = log_Q + r.log()
    log_E = 2 * rho2[beta.index].log()
    lam, mu = compute_lambda_mu(log_Q, log_E, d, delta)
    return dict(
        base,
        d=d,
        delta=delta,
        den_beta=den,
        Delta=Delta,
        conjugates=list(beta.conjugates),
        selected_index=beta.index,
        rho2=rho2,
        log_Delta=log_Delta,
        log_Q=log_Q,
        log_E=log_E,
        lam=lam,
        mu=mu,
        precision_bits=prec,
        multiplicity=resolved.multiplicity,
        irreducibility_assumed=resolved.irreducibility_assumed,
    )


def certify(
    beta,
    x,
    mu_width: float = DEFAULT_MU_WIDTH,
    prec: int = DEFAULT_START_PREC,
    cap: int = PRECISION_CAP,
) -> MeasureCertificate:
    """Full pipeline with precision doubling until the relative width of the
    mu interval is at most ``mu_width``.  Never raises for mathematical
    failures: the certificate's status names the outcome."""
    x = as_rational(x)
    desc = beta.describe() if isinstance(beta, BetaSpec) else {"min_poly": [int(c) for c in beta.min_poly.int_coeffs()]}
    base = dict(beta=desc, x=x)
    p = prec
    while True:
        try:
            if isinstance(beta, BetaSpec):
                resolved = beta.resolve(p, cap)
            else:
                num = beta if beta.prec >= p else beta.refine(p, cap)
                resolved = ResolvedBeta(num, 1, num.degree > 1, None)
        except CertificationError as e:
            return MeasureCertificate(PRECISION_CAP_HIT, str(e), precision_bits=p, **base)
        num = resolved.number
        base["beta"] = dict(
            desc, min_poly=num.min_poly.int_coeffs(), selected=num.selected
        )
        flags = check_hypotheses(num, x)
        if flags.failures():
            return MeasureCertificate(
                HYPOTHESIS_FAILED, "; ".join(flags.failures()), flags=flags, precision_bits=p, **base
            )
        if flags.abs_beta_gt1 is None:
            if p >= cap:
                return MeasureCertificate(
                    PRECISION_CAP_HIT, "|beta| > 1 undecided at the precision cap", flags=flags, precision_bits=p, **base
                )
            p = min(2 * p, cap)
            continue
        vals = _evaluate(resolved, x, p, base)
        lam = vals["lam"]
        if lam.hi() <= 0:
            flags = HypothesisFlags(True, True, True, False)
            return MeasureCertificate(
                LAMBDA_NOT_POSITIVE, "lambda <= 0: no measure follows", flags=flags, **vals
            )
        if vals["mu"] is not None:
            flags = HypothesisFlags(True, True, True, True)
            if _mu_rel_width(vals["mu"]) <= mu_width:
                return MeasureCertificate(CERTIFIED, "mu_eff <= mu (upper bound)", flags=flags, **vals)
            if p >= cap:
                return MeasureCertificate(
                    PRECISION_CAP_HIT, "mu width target not reached at the precision cap", flags=flags, **vals
                )
        elif p >= cap:
            flags = HypothesisFlags(True, True, True, None)
            return MeasureCertificate(
                LAMBDA_NOT_POSITIVE, "lambda > 0 not certified at the precision cap", flags=flags, **vals
            )
        p = min(2 * p, cap)
