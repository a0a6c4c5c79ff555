"""End-to-end resistance certificates.

Two pipelines:

* Dicke superpositions: by permutation symmetry a single ``k``-subset and a
  single ``(k-1)``-subset decide every reduction, via the Hankel test.
* Code states: every lost subset of size ``m`` gets an explicit PPT witness
  and every lost subset of size ``m+1`` must reduce to a diagonal operator.

Certificates serialize to JSON with rationals as ``"num/den"`` strings and
subsets in lexicographic order, so identical inputs give identical bytes.
"""

from __future__ import annotations

import enum
import hashlib
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Callable, Iterable, Sequence

from . import __version__
from .arrays import (CodeArray, agreeing_pairs, format_code, is_critical_array,
                     state_from_array)
from .core import (DenseOperator, char_coefficients, format_fraction, outer, partial_trace,
                   partial_transpose, quadratic_form, to_fraction)
from .dicke import DickeCombo, KMixtureError, hankel, is_k_mixture, reduce_combo
from .separability import Kind, Verdict, diagonal_fully_separable, dicke_separable, ppt_witness

VERSION = f"resistcert {__version__}"
ORDER = "lexicographic"


class Outcome(str, enum.Enum):
    CERTIFIED = "CERTIFIED"
    REFUTED = "REFUTED"
    INCONCLUSIVE = "INCONCLUSIVE"


class PreconditionError(ValueError):
    pass


class WitnessError(ValueError):
    """No pair of rows agrees on the lost subset."""


@dataclass(frozen=True)
class Check:
    lost: tuple[int, ...]
    kind: str
    verdict: str
    evidence: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Certificate:
    subject: dict
    claim: dict
    outcome: Outcome
    checks: tuple[Check, ...]
    counts: dict
    version: str = VERSION
    order: str = ORDER

    def counterexamples(self) -> list[Check]:
        return [c for c in self.checks if c.evidence.get("counterexample")]


# -- serialization ---------------------------------------------------------

def _label(x: Sequence[int]) -> str:
    return "".join(map(str, x)) if max(x, default=0) < 10 else " ".join(map(str, x))


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, dict) or hasattr(obj, "items"):
        items = list(obj.items())
        if items and isinstance(items[0][0], tuple):
            return [[_label(k), jsonable(v)] for k, v in sorted(items)]
        return {str(k): jsonable(v) for k, v in items}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def certificate_document(cert: Certificate) -> dict:
    return {
        "version": cert.version,
        "order": cert.order,
        "subject": jsonable(cert.subject),
        "claim": jsonable(cert.claim),
        "outcome": cert.outcome.value,
        "counts": jsonable(cert.counts),
        "checks": [{"lost": list(c.lost), "kind": c.kind, "verdict": c.verdict,
                    "evidence": jsonable(c.evidence)} for c in cert.checks],
    }


def emit_certificate(cert: Certificate) -> str:
    return json.dumps(certificate_document(cert), indent=2) + "\n"


# -- Dicke pipeline --------------------------------------------------------

def gme_support_check(combo: DickeCombo) -> Check:
    """Auditable stand-in for the global GME premise.

    A symmetric state with two nonzero Dicke weights separated by a zero
    weight is not a product state, hence entangled, hence GME.
    """
    support = combo.support
    gap = next(((i, j) for i, j in zip(support, support[1:]) if j - i >= 2), None)
    evidence = {"support": support, "separated_pair": list(gap) if gap else None}
    return Check((), "global-gme-support", "PASS" if gap else "FAIL", evidence)


def _hankel_check(combo: DickeCombo, k: int, kind: str, want: Kind) -> Check:
    n = combo.n_qubits
    lost = tuple(range(k, n))
    if not is_k_mixture(combo, k):
        return Check(lost, kind, Kind.INCONCLUSIVE.value,
                     {"reason": f"gap condition fails for k={k}; cross terms may survive"})
    mix = reduce_combo(combo, k)
    verdict = dicke_separable(mix)
    evidence = {"k": k, "mixture": mix.coeffs, "symmetry": "every k-subset gives this reduction",
                **verdict.evidence}
    if verdict.kind is not want:
        evidence["counterexample"] = True
    return Check(lost, kind, verdict.kind.value, evidence)


def certify_dicke_strong(combo: DickeCombo, m: int, subject: dict | None = None) -> Certificate:
    n = combo.n_qubits
    k = n - m
    if not 2 <= k < n:
        raise PreconditionError(f"need 1 <= m <= N-2, got m={m}, N={n}")
    if not is_k_mixture(combo, k - 1):
        raise KMixtureError(f"support {combo.support} is not a {k - 1}-mixture")
    checks = (
        gme_support_check(combo),
        _hankel_check(combo, k, "robustness-hankel", Kind.ENTANGLED),
        _hankel_check(combo, k - 1, "fragility-hankel", Kind.SEPARABLE),
    )
    gme, robust, fragile = checks
    if robust.verdict == "SEPARABLE" or fragile.verdict == "ENTANGLED":
        outcome = Outcome.REFUTED
    elif gme.verdict == "PASS" and robust.verdict == "ENTANGLED" and fragile.verdict == "SEPARABLE":
        outcome = Outcome.CERTIFIED
    else:
        outcome = Outcome.INCONCLUSIVE
    subj = {"kind": "dicke", "n": n, "weights": dict(combo.weights)}
    if subject:
        subj.update(subject)
    return Certificate(
        subject=subj,
        claim={"m": m, "strong": True},
        outcome=outcome,
        checks=checks,
        counts={"robustness_subsets": comb(n, m), "fragility_subsets": comb(n, m + 1),
                "coverage": "permutation symmetry"},
    )


# -- code pipeline ---------------------------------------------------------

def witness_for_subset(code: CodeArray, coeffs: Sequence, lost: Iterable[int],
                       retained_pivot: int, pair: tuple[int, int] | None = None
                       ) -> dict[tuple[int, ...], Fraction]:
    """Two-term witness on the retained parties.

    ``x`` and ``y`` are two rows agreeing on ``lost``, restricted to the
    retained parties, with their symbols at ``retained_pivot`` exchanged.
    After transposing the pivot party the cross term ``c_i c_j`` sits at
    ``(x, y)``, so ``e_x - sign(c_i c_j) e_y`` picks up ``-2|c_i c_j|``.
    """
    lost = tuple(sorted(set(lost)))
    keep = [p for p in range(code.n) if p not in lost]
    if retained_pivot not in keep:
        raise ValueError(f"pivot {retained_pivot} is not a retained party")
    if pair is None:
        pairs = agreeing_pairs(code, lost)
        if not pairs:
            raise WitnessError(f"no two rows agree on {list(lost)}")
        pair = pairs[0]
    i, j = pair
    ri, rj = code.rows[i], code.rows[j]
    if any(ri[p] != rj[p] for p in lost):
        raise WitnessError(f"rows {i} and {j} do not agree on {list(lost)}")
    if ri[retained_pivot] == rj[retained_pivot]:
        raise WitnessError("degenerate witness: pivot symbols coincide")
    x = [ri[p] for p in keep]
    y = [rj[p] for p in keep]
    t = keep.index(retained_pivot)
    x[t], y[t] = y[t], x[t]
    ci, cj = to_fraction(coeffs[i]), to_fraction(coeffs[j])
    sign = 1 if ci * cj > 0 else -1
    return {tuple(x): Fraction(1), tuple(y): Fraction(-sign)}


def search_witness(code: CodeArray, coeffs: Sequence, lost: tuple[int, ...],
                   reduced: DenseOperator) -> Verdict:
    """Try pivots from the highest retained index down, then further row pairs."""
    keep = [p for p in range(code.n) if p not in lost]
    tried = 0
    for pair in agreeing_pairs(code, lost):
        i, j = pair
        for pivot in reversed(keep):
            if code.rows[i][pivot] == code.rows[j][pivot]:
                continue
            v = witness_for_subset(code, coeffs, lost, pivot, pair)
            verdict = ppt_witness(reduced, keep.index(pivot), v)
            tried += 1
            if verdict.kind is Kind.ENTANGLED:
                return Verdict(Kind.ENTANGLED, {"rows": list(pair), "pivot": pivot,
                                                **verdict.evidence})
    return Verdict(Kind.INCONCLUSIVE, {"witnesses_tried": tried})


def _robustness(code, coeffs, rho, lost) -> Check:
    reduced = partial_trace(rho, lost)
    diag = diagonal_fully_separable(reduced)
    if diag.kind is Kind.SEPARABLE:
        return Check(lost, "robustness-ppt", "SEPARABLE",
                     {**diag.evidence, "counterexample": True})
    verdict = search_witness(code, coeffs, lost, reduced)
    return Check(lost, "robustness-ppt", verdict.kind.value, dict(verdict.evidence))


def _fragility(code, coeffs, rho, lost) -> Check:
    reduced = partial_trace(rho, lost)
    diag = diagonal_fully_separable(reduced)
    if diag.kind is Kind.SEPARABLE:
        return Check(lost, "fragility-diagonal", "SEPARABLE", dict(diag.evidence))
    verdict = search_witness(code, coeffs, lost, reduced)
    evidence = {**diag.evidence, **verdict.evidence}
    if verdict.kind is Kind.ENTANGLED:
        evidence["counterexample"] = True
    return Check(lost, "fragility-diagonal", verdict.kind.value, evidence)


def code_digest(code: CodeArray) -> str:
    text = f"q={code.q}\n" + format_code(code)
    return hashlib.sha256(text.encode()).hexdigest()


def certify_code_resistant(code: CodeArray, coeffs: Sequence | None, m: int,
                           strict: bool = True, workers: int = 1) -> Certificate:
    """Check every lost subset of sizes ``m`` and ``m+1`` for the array state.

    With ``strict`` the critical-array and ``N >= 2(m+1)`` preconditions
    raise :class:`PreconditionError`; otherwise they are recorded and the
    subset checks run regardless (a CERTIFIED outcome rests on the checks
    themselves, not on the preconditions).
    """
    n = code.n
    if not 0 <= m < n - 1:
        raise PreconditionError(f"need 0 <= m <= N-2, got m={m}")
    coeffs = [Fraction(1)] * code.r if coeffs is None else [to_fraction(c) for c in coeffs]
    ca = is_critical_array(code, m + 1)
    long_enough = n >= 2 * (m + 1)
    pre = Check((), "precondition", "PASS" if ca and long_enough else "FAIL",
                {"critical_array": bool(ca), "critical_array_detail": ca.reason,
                 "n_at_least_2k": long_enough})
    if strict and pre.verdict == "FAIL":
        why = ca.reason if not ca else f"N={n} < 2k={2 * (m + 1)}"
        raise PreconditionError(f"array is not a usable CA(r,{n},{code.q},{m + 1}): {why}")
    rho = outer(state_from_array(code, coeffs))
    robust_sets = list(combinations(range(n), m))
    fragile_sets = list(combinations(range(n), m + 1))
    jobs: list[Callable[[], Check]] = (
        [lambda J=J: _robustness(code, coeffs, rho, J) for J in robust_sets]
        + [lambda J=J: _fragility(code, coeffs, rho, J) for J in fragile_sets])
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(job) for job in jobs]
            results = [f.result() for f in futures]
    else:
        results = [job() for job in jobs]
    robust, fragile = results[:len(robust_sets)], results[len(robust_sets):]
    assert len(robust) == comb(n, m) and len(fragile) == comb(n, m + 1)

    if any(c.verdict == "SEPARABLE" for c in robust) or any(c.verdict == "ENTANGLED" for c in fragile):
        outcome = Outcome.REFUTED
    elif all(c.verdict == "ENTANGLED" for c in robust) and all(c.verdict == "SEPARABLE" for c in fragile):
        outcome = Outcome.CERTIFIED
    else:
        outcome = Outcome.INCONCLUSIVE
    subject = {"kind": "code", "q": code.q, "n": n, "r": code.r, "digest": code_digest(code),
               "rows": [_label(r) for r in code.rows], "coeffs": coeffs}
    return Certificate(
        subject=subject,
        claim={"m": m, "strong": False, "preconditions_enforced": strict},
        outcome=outcome,
        checks=(pre, *robust, *fragile),
        counts={"robustness_subsets": len(robust), "fragility_subsets": len(fragile),
                "coverage": "all subsets"},
    )


# -- replay and revalidation ----------------------------------------------

def _frac(s: str) -> Fraction:
    return Fraction(s)


def _parse_label(s: str) -> tuple[int, ...]:
    return tuple(int(t) for t in s.split()) if " " in s else tuple(int(c) for c in s)


def rerun(doc: dict) -> Certificate:
    """Recompute a certificate from the subject and claim recorded in ``doc``."""
    subject, claim = doc["subject"], doc["claim"]
    if subject["kind"] == "dicke":
        combo = DickeCombo(subject["n"], {int(i): _frac(b) for i, b in subject["weights"].items()})
        extra = {k: v for k, v in subject.items() if k not in ("kind", "n", "weights")}
        extra = {k: (_frac(v) if isinstance(v, str) and "/" in v else v) for k, v in extra.items()}
        return certify_dicke_strong(combo, claim["m"], subject=extra or None)
    if subject["kind"] == "code":
        code = CodeArray(subject["q"], tuple(_parse_label(r) for r in subject["rows"]))
        return certify_code_resistant(code, [_frac(c) for c in subject["coeffs"]], claim["m"],
                                      strict=claim.get("preconditions_enforced", True))
    raise ValueError(f"unknown subject kind {subject['kind']!r}")


def replay(text: str) -> bool:
    """True iff recomputing the certificate reproduces ``text`` byte for byte."""
    return emit_certificate(rerun(json.loads(text))) == text


def revalidate(doc: dict) -> list[str]:
    """Independently re-check every piece of recorded evidence.

    Returns a list of problems; empty means every SEPARABLE/ENTANGLED claim
    in the document holds when recomputed from the subject.
    """
    problems = []
    subject = doc["subject"]
    if subject["kind"] == "dicke":
        combo = DickeCombo(subject["n"], {int(i): _frac(b) for i, b in subject["weights"].items()})
        for c in doc["checks"]:
            if not c["kind"].endswith("hankel") or c["verdict"] == "INCONCLUSIVE":
                continue
            ev = c["evidence"]
            pair = hankel(reduce_combo(combo, ev["k"]))
            for name, m in (("M0", pair.m0), ("M1", pair.m1)):
                if [[_frac(v) for v in row] for row in ev[name]] != [list(r) for r in m]:
                    problems.append(f"{c['kind']}: recorded {name} differs from recomputation")
            if c["verdict"] == "ENTANGLED":
                m = pair.m0 if ev["failing_matrix"] == "M0" else pair.m1
                e = char_coefficients(m)[ev["coefficient_index"]]
                if not e < 0 or e != _frac(ev["coefficient"]):
                    problems.append(f"{c['kind']}: failing coefficient does not re-validate")
            else:
                if any(e < 0 for e in char_coefficients(pair.m0) + char_coefficients(pair.m1)):
                    problems.append(f"{c['kind']}: separable claim does not re-validate")
        return problems

    code = CodeArray(subject["q"], tuple(_parse_label(r) for r in subject["rows"]))
    rho = outer(state_from_array(code, [_frac(x) for x in subject["coeffs"]]))
    for c in doc["checks"]:
        if c["kind"] == "precondition" or c["verdict"] == "INCONCLUSIVE":
            continue
        reduced = partial_trace(rho, c["lost"])
        ev = c["evidence"]
        if c["verdict"] == "SEPARABLE":
            if not reduced.is_diagonal():
                problems.append(f"{c['lost']}: reduction is not diagonal")
        else:
            v = {_parse_label(lbl): _frac(val) for lbl, val in ev["vector"]}
            value = quadratic_form(partial_transpose(reduced, ev["party"]), v)
            if not value < 0 or value != _frac(ev["value"]):
                problems.append(f"{c['lost']}: witness value does not re-validate")
    return problems

