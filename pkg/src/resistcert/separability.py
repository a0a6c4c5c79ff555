"""Verdict engines.

Three routes, each exact:

* Hankel positivity for Dicke-diagonal mixtures, which decides separability
  outright;
* diagonality, which proves full separability (a diagonal state is a mixture
  of product basis projectors);
* a PPT quadratic-form witness, whose negative value proves entanglement.

Anything else is reported as INCONCLUSIVE; there is no general decider here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Mapping

from ._guards import MAX_PPT_PARTIES, GuardError
from .core import (DenseOperator, char_coefficients, operator_is_psd, partial_transpose,
                   quadratic_form, to_fraction)
from .dicke import DickeMixture, hankel

GME_NOTE = ("genuinely multipartite entangled: reductions of symmetric states "
            "are either fully separable or GME")


class Kind(str, enum.Enum):
    SEPARABLE = "SEPARABLE"
    ENTANGLED = "ENTANGLED"
    INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class Verdict:
    kind: Kind
    evidence: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind is not Kind.INCONCLUSIVE and not self.evidence:
            raise ValueError(f"{self.kind.value} verdict needs evidence")


def dicke_separable(mix: DickeMixture) -> Verdict:
    if any(c < 0 for c in mix.coeffs):
        raise ValueError("mixture coefficients must be nonnegative")
    pair = hankel(mix)
    evidence: dict[str, Any] = {"M0": pair.m0, "M1": pair.m1}
    for name, m in (("M0", pair.m0), ("M1", pair.m1)):
        coeffs = char_coefficients(m)
        for i, e in enumerate(coeffs):
            if e < 0:
                evidence.update(failing_matrix=name, coefficient_index=i, coefficient=e,
                                annotation=GME_NOTE)
                return Verdict(Kind.ENTANGLED, evidence)
        evidence[f"{name}_coefficients"] = coeffs
    return Verdict(Kind.SEPARABLE, evidence)


def diagonal_fully_separable(rho: DenseOperator) -> Verdict:
    off = rho.off_diagonal()
    if not off:
        return Verdict(Kind.SEPARABLE, {"diagonal": True, "support_size": len(rho.support())})
    return Verdict(Kind.INCONCLUSIVE, {"off_diagonal_entries": len(off),
                                       "first_off_diagonal": list(off[0])})


def ppt_witness(rho: DenseOperator, party: int, v: Mapping) -> Verdict:
    """Evaluate ``v^T rho^{T_party} v``; a negative value certifies entanglement."""
    vec = {rho.shape.check_label(x): to_fraction(c) for x, c in v.items()}
    vec = {x: c for x, c in vec.items() if c}
    if not vec:
        raise ValueError("witness vector is zero")
    value = quadratic_form(partial_transpose(rho, party), vec)
    evidence = {"party": party, "vector": dict(sorted(vec.items())), "value": value}
    if value < 0:
        return Verdict(Kind.ENTANGLED, evidence)
    return Verdict(Kind.INCONCLUSIVE, evidence)


def ppt_all_bipartitions(rho: DenseOperator) -> bool:
    """True iff the partial transpose across every bipartition is PSD.

    Bipartitions are enumerated once each: the transposed side never
    contains the last party (transposing the complement gives the full
    transpose of the same matrix, which has the same spectrum).
    """
    n = rho.shape.n_parties
    if n > MAX_PPT_PARTIES:
        raise GuardError(f"{n} parties exceeds the PPT sweep guard of {MAX_PPT_PARTIES}")
    for size in range(1, n):
        for side in combinations(range(n - 1), size):
            if not operator_is_psd(partial_transpose(rho, side)):
                return False
    return True
