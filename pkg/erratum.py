# erratum.py
"""
Reproduce the counterexamples to two published claims about gamma(P_n x G)
and gamma(C_n x G) when G is a clique.

Exact values come from the solvers, never from closed_forms, and are confirmed
by the brute-force reference search before a report is issued.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from config_schemas import SolveConfig
from constants import ErratumInstances
from graph_core import ProductFamily, make_clique, product_instance
from solvers import reference_solve, solve_min
from verifiers import ParamKind, VertexSet

logger = logging.getLogger("Erratum")


class ClaimId(str, Enum):
    SITTHIWIRATTHAM_PATH = "sitthiwirattham-path"
    SITTHIWIRATTHAM_CYCLE = "sitthiwirattham-cycle"
    GRAVIER_BOUND = "gravier-bound"


class ClaimType(str, Enum):
    EQUALITY = "equality"
    UPPER_BOUND = "upper-bound"


class ErratumVerdict(str, Enum):
    REFUTED = "REFUTED"
    CONSISTENT = "CONSISTENT"


@dataclass
class ErratumReport:
    claim_id: ClaimId
    claim_type: ClaimType
    family: ProductFamily
    n: int
    m: int
    claimed_value_or_bound: int
    exact_value: int
    verdict: ErratumVerdict
    certificate: VertexSet
    reference_value: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "claim": self.claim_id.value,
            "n": self.n,
            "m": self.m,
            "claimed": self.claimed_value_or_bound,
            "exact": self.exact_value,
            "verdict": self.verdict.value,
        }

    def summary_line(self) -> str:
        return f"claimed {self.claimed_value_or_bound}, exact {self.exact_value}: {self.verdict.value}"


def sitthiwirattham_formula(n: int, m_order: int, gamma_G: int) -> int:
    """Claimed gamma(P_n x G) = gamma(C_n x G) = min(n gamma(G), |V(G)| ceil(n/3))"""
    return min(n * gamma_G, m_order * -(-n // 3))


def gravier_bound(n: int, gamma_G: int) -> int:
    """Claimed upper bound gamma(P_n x G) <= 2 gamma(G) (floor(n/4) + 1)"""
    return 2 * gamma_G * (n // 4 + 1)


def decide_verdict(claim_type: ClaimType, claimed: int, exact: int) -> ErratumVerdict:
    if claim_type == ClaimType.EQUALITY:
        refuted = claimed != exact
    else:
        refuted = claimed < exact
    return ErratumVerdict.REFUTED if refuted else ErratumVerdict.CONSISTENT


def _claim_instance(claim_id: ClaimId, gravier_m: int) -> Tuple[ClaimType, ProductFamily, int, int]:
    if claim_id == ClaimId.SITTHIWIRATTHAM_PATH:
        return ClaimType.EQUALITY, ProductFamily.PATH_CLIQUE, ErratumInstances.PATH_N, ErratumInstances.PATH_M
    if claim_id == ClaimId.SITTHIWIRATTHAM_CYCLE:
        return ClaimType.EQUALITY, ProductFamily.CYCLE_CLIQUE, ErratumInstances.CYCLE_N, ErratumInstances.CYCLE_M
    return ClaimType.UPPER_BOUND, ProductFamily.PATH_CLIQUE, ErratumInstances.BOUND_N, gravier_m


def run_erratum(claim_id: ClaimId, cfg: Optional[SolveConfig] = None,
                gravier_m: int = ErratumInstances.BOUND_M,
                confirm_with_reference: bool = True) -> ErratumReport:
    """Compare the claimed value or bound with the exact domination number"""
    claim_id = ClaimId(claim_id)
    cfg = cfg or SolveConfig()
    claim_type, family, n, m = _claim_instance(claim_id, gravier_m)

    gamma_G = solve_min(make_clique(m), ParamKind.DOM, cfg).value
    if claim_type == ClaimType.EQUALITY:
        claimed = sitthiwirattham_formula(n, m, gamma_G)
    else:
        claimed = gravier_bound(n, gamma_G)

    g = product_instance(family, n, m)
    exact = solve_min(g, ParamKind.DOM, cfg)

    reference_value = None
    if confirm_with_reference:
        reference = reference_solve(g, ParamKind.DOM, max_size=exact.value, node_budget=cfg.node_budget)
        reference_value = reference.value if reference is not None else None
        if reference_value != exact.value:
            raise RuntimeError(
                f"{claim_id.value}: reference search gives {reference_value}, solver gives {exact.value}"
            )

    verdict = decide_verdict(claim_type, claimed, exact.value)
    report = ErratumReport(claim_id, claim_type, family, n, m, claimed, exact.value, verdict,
                           exact.certificate, reference_value)
    logger.info(f"{claim_id.value} ({g.describe()}): {report.summary_line()}")
    return report


def run_all(cfg: Optional[SolveConfig] = None, confirm_with_reference: bool = True) -> List[ErratumReport]:
    return [run_erratum(claim_id, cfg, confirm_with_reference=confirm_with_reference) for claim_id in ClaimId]


def path_cycle_gap(n: int = ErratumInstances.PATH_N, m: int = ErratumInstances.PATH_M,
                   cfg: Optional[SolveConfig] = None) -> Tuple[int, int]:
    """(gamma(P_n x K_m), gamma(C_n x K_m)) by exact search"""
    path = solve_min(product_instance(ProductFamily.PATH_CLIQUE, n, m), ParamKind.DOM, cfg).value
    cycle = solve_min(product_instance(ProductFamily.CYCLE_CLIQUE, n, m), ParamKind.DOM, cfg).value
    logger.info(f"n={n} m={m}: path {path}, cycle {cycle}")
    return path, cycle
