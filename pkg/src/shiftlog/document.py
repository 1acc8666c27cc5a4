"""JSON-compatible certificate documents.

Balls are written as decimal strings with enough digits to recover the
binary midpoint exactly at the recorded precision (and the 30-bit radius
exactly), plus outward bounds for human readers.  The payload is hashed;
timing and tool metadata live outside it.
"""

from __future__ import annotations

import hashlib
import json
import math
from fractions import Fraction

import mpmath

from . import __version__
from .balls import ComplexBall, RealBall, context, mpf_to_fraction
from .exact import LogExactConstant
from .measure import HypothesisFlags, MeasureCertificate

SCHEMA_VERSION = "shiftlog-certificate/1"


def _digits(prec: int) -> int:
    return int(math.ceil(prec * math.log10(2))) + 2


def _mpf_str(v, prec: int) -> str:
    return mpmath.nstr(context(prec).mpf(v), _digits(prec), min_fixed=1, max_fixed=0, strip_zeros=False)


def _rad_str(v) -> str:
    return mpmath.nstr(v, 12, min_fixed=1, max_fixed=0, strip_zeros=False)


def _directed_str(v, upward: bool, digits: int = 20) -> str:
    """Decimal with ``digits`` significant digits rounded towards +/- infinity."""
    q = mpf_to_fraction(v)
    if q == 0:
        return "0"
    # order of magnitude, possibly off by one, which only changes the digit count
    e = len(str(abs(q.numerator))) - len(str(q.denominator)) - (digits - 1)
    scaled = q / Fraction(10) ** e
    n = math.ceil(scaled) if upward else math.floor(scaled)
    return f"{n}e{e}"


def real_ball_doc(b: RealBall) -> dict:
    return {
        "mid": _mpf_str(b.mid, b.prec),
        "rad": _rad_str(b.rad),
        "lo": _directed_str(b.lo(), upward=False),
        "hi": _directed_str(b.hi(), upward=True),
        "prec": b.prec,
    }


def real_ball_from_doc(d: dict) -> RealBall:
    ctx = context(d["prec"])
    return RealBall(ctx.mpf(d["mid"]), mpmath.mpf(d["rad"]), d["prec"])


def complex_ball_doc(b: ComplexBall) -> dict:
    return {
        "re": _mpf_str(b.mid.real, b.prec),
        "im": _mpf_str(b.mid.imag, b.prec),
        "rad": _rad_str(b.rad),
        "prec": b.prec,
    }


def complex_ball_from_doc(d: dict) -> ComplexBall:
    ctx = context(d["prec"])
    return ComplexBall(ctx.mpc(ctx.mpf(d["re"]), ctx.mpf(d["im"])), mpmath.mpf(d["rad"]), d["prec"])


def _opt(v, fn):
    return None if v is None else fn(v)


def _beta_doc(beta: dict) -> dict:
    out = dict(beta)
    if isinstance(out.get("selected"), ComplexBall):
        out["selected"] = complex_ball_doc(out["selected"])
    if "min_poly" in out:
        out["min_poly"] = [int(c) for c in out["min_poly"]]
    return out


def _beta_from_doc(d: dict) -> dict:
    out = dict(d)
    if isinstance(out.get("selected"), dict):
        out["selected"] = complex_ball_from_doc(out["selected"])
    return out


def certificate_payload(c: MeasureCertificate) -> dict:
    return {
        "status": c.status,
        "message": c.message,
        "beta": _beta_doc(c.beta),
        "x": str(c.x),
        "d": c.d,
        "delta": _opt(c.delta, str),
        "denBeta": c.den_beta,
        "Delta": _opt(c.Delta, lambda v: dict(v.to_json(), text=v.to_str())),
        "conjugates": [complex_ball_doc(b) for b in c.conjugates],
        "selectedIndex": c.selected_index,
        "rho2PerConjugate": [real_ball_doc(b) for b in c.rho2],
        "logDelta": _opt(c.log_Delta, real_ball_doc),
        "logQ": _opt(c.log_Q, real_ball_doc),
        "logE": _opt(c.log_E, real_ball_doc),
        "lambda": _opt(c.lam, real_ball_doc),
        "muBound": _opt(c.mu, real_ball_doc),
        "hypothesisFlags": _opt(c.flags, HypothesisFlags.to_dict),
        "precisionBits": c.precision_bits,
        "multiplicity": c.multiplicity,
        "irreducibilityAssumed": c.irreducibility_assumed,
    }


def payload_hash(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def to_document(c: MeasureCertificate, elapsed: float | None = None) -> dict:
    payload = certificate_payload(c)
    doc = {
        "schema": SCHEMA_VERSION,
        "payload": payload,
        "payloadSha256": payload_hash(payload),
        "meta": {"tool": "shiftlog", "version": __version__},
    }
    if elapsed is not None:
        doc["meta"]["elapsedSeconds"] = round(elapsed, 3)
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def from_document(doc: dict) -> MeasureCertificate:
    if doc.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema {doc.get('schema')!r}")
    p = doc["payload"]
    if payload_hash(p) != doc["payloadSha256"]:
        raise ValueError("payload hash mismatch")
    flags = p["hypothesisFlags"]
    return MeasureCertificate(
        status=p["status"],
        message=p["message"],
        beta=_beta_from_doc(p["beta"]),
        x=Fraction(p["x"]),
        d=p["d"],
        delta=_opt(p["delta"], Fraction),
        den_beta=p["denBeta"],
        Delta=_opt(p["Delta"], LogExactConstant.from_json),
        conjugates=[complex_ball_from_doc(b) for b in p["conjugates"]],
        selected_index=p["selectedIndex"],
        rho2=[real_ball_from_doc(b) for b in p["rho2PerConjugate"]],
        log_Delta=_opt(p["logDelta"], real_ball_from_doc),
        log_Q=_opt(p["logQ"], real_ball_from_doc),
        log_E=_opt(p["logE"], real_ball_from_doc),
        lam=_opt(p["lambda"], real_ball_from_doc),
        mu=_opt(p["muBound"], real_ball_from_doc),
        flags=None
        if flags is None
        else HypothesisFlags(
            flags["absBetaGT1"], flags["xInRange"], flags["rhoDistinctAllConjugates"], flags["lambdaPositive"]
        ),
        precision_bits=p["precisionBits"],
        multiplicity=p["multiplicity"],
        irreducibility_assumed=p["irreducibilityAssumed"],
    )
