# closed_forms.py
"""
Closed-form values of the domination parameters on P_n x K_m and C_n x K_m.

Each function returns a FormulaResult whose source tag names the branch that
fired and whose guard records the (family, kind, n, m) that licensed it.
Inputs outside every branch raise FormulaDomainError with a reason.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Tuple, Union

from graph_core import ProductFamily
from verifiers import ParamKind

logger = logging.getLogger("ClosedForms")


class BaseGraphKind(str, Enum):
    PATH = "path"
    CYCLE = "cycle"


class DomainReason(str, Enum):
    N_TOO_SMALL = "N_TOO_SMALL"
    M_TOO_SMALL = "M_TOO_SMALL"
    UNCOVERED_CASE = "UNCOVERED_CASE"


class FormulaDomainError(ValueError):
    """Raised when no formula branch covers the requested instance"""

    def __init__(self, reason: DomainReason, message: str):
        super().__init__(f"{reason.value}: {message}")
        self.reason = reason


class FormulaSource(str, Enum):
    # domination on cycles
    CYCLE_TWO = "cycle-two"
    CYCLE_THREE = "cycle-three"
    CYCLE_FOUR_FIVE = "cycle-four-five"
    CYCLE_3K = "cycle-3k"
    CYCLE_3K_PLUS_1 = "cycle-3k-plus-1"
    CYCLE_3K_PLUS_2 = "cycle-3k-plus-2"
    # domination on paths
    PATH_TWO = "path-two"
    PATH_3K = "path-3k"
    PATH_3K_PLUS_1_OR_2 = "path-3k-plus-1-or-2"
    # bipartite double covers
    K2_PATH = "k2-path"
    K2_CYCLE_ODD = "k2-cycle-odd"
    K2_CYCLE_EVEN = "k2-cycle-even"
    SECURE_K2_PATH = "secure-k2-path"
    SECURE_K2_CYCLE_ODD = "secure-k2-cycle-odd"
    SECURE_K2_CYCLE_EVEN = "secure-k2-cycle-even"
    # secure domination
    SECURE_CYCLE_N = "secure-cycle-n"
    SECURE_C2_M3 = "secure-c2-m3"
    SECURE_C2_M4_PLUS = "secure-c2-m4-plus"
    SECURE_PATH_ROW_PLUS_TWO = "secure-path-n-plus-2"
    SECURE_PATH_M3_3K = "secure-path-m3-3k"
    SECURE_PATH_M3_3K_PLUS_3 = "secure-path-m3-3k-plus-3"
    # factor graphs
    BASE_DOMINATION = "base-domination"
    SECURE_BASE_PATH = "secure-base-path"
    SECURE_BASE_CYCLE_SMALL = "secure-base-cycle-small"
    SECURE_BASE_CYCLE = "secure-base-cycle"
    # equalities
    TWODOM_EQUALS_SECURE = "2dom-equals-secure"
    IDOM_DOM12_EQUAL_DOM = "idom-dom12-equal-dom"


@dataclass(frozen=True)
class FormulaGuard:
    family: Union[ProductFamily, BaseGraphKind]
    kind: ParamKind
    n: int
    m: Optional[int] = None


@dataclass(frozen=True)
class FormulaResult:
    value: int
    source: FormulaSource
    guard: FormulaGuard

    def recompute(self) -> "FormulaResult":
        """Re-evaluate from the guard alone"""
        if isinstance(self.guard.family, BaseGraphKind):
            if self.guard.kind == ParamKind.SDOM:
                return gamma_s_path_cycle_base(self.guard.family, self.guard.n)
            return gamma_path_cycle_base(self.guard.family, self.guard.n)
        return evaluate_formula(self.guard.kind, self.guard.family, self.guard.n, self.guard.m)


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _as_base(family) -> BaseGraphKind:
    if isinstance(family, ProductFamily):
        if family == ProductFamily.OTHER:
            raise FormulaDomainError(DomainReason.UNCOVERED_CASE, "no formula for general products")
        return BaseGraphKind.PATH if family == ProductFamily.PATH_CLIQUE else BaseGraphKind.CYCLE
    try:
        return BaseGraphKind(family)
    except ValueError:
        return _as_base(ProductFamily(family))


def _as_product(base: BaseGraphKind) -> ProductFamily:
    return ProductFamily.PATH_CLIQUE if base == BaseGraphKind.PATH else ProductFamily.CYCLE_CLIQUE


def _require(condition: bool, reason: DomainReason, message: str):
    if not condition:
        raise FormulaDomainError(reason, message)


def _result(value: int, source: FormulaSource, family, kind: ParamKind, n: int, m: Optional[int]) -> FormulaResult:
    logger.debug(f"{kind.label} {family.value} n={n} m={m}: {value} via {source.value}")
    return FormulaResult(value, source, FormulaGuard(family, kind, n, m))


# Domination

def gamma_cycle(n: int, m: int) -> FormulaResult:
    _require(m >= 3, DomainReason.M_TOO_SMALL, f"gamma(C_n x K_m) needs m >= 3, got {m}")
    _require(n >= 2, DomainReason.N_TOO_SMALL, f"gamma(C_n x K_m) needs n >= 2, got {n}")
    family, kind = ProductFamily.CYCLE_CLIQUE, ParamKind.DOM
    if n == 2:
        return _result(2, FormulaSource.CYCLE_TWO, family, kind, n, m)
    if n == 3:
        return _result(3, FormulaSource.CYCLE_THREE, family, kind, n, m)
    if n in (4, 5):
        return _result(4, FormulaSource.CYCLE_FOUR_FIVE, family, kind, n, m)
    k, r = divmod(n, 3)
    source = (FormulaSource.CYCLE_3K, FormulaSource.CYCLE_3K_PLUS_1, FormulaSource.CYCLE_3K_PLUS_2)[r]
    return _result(2 * k + r, source, family, kind, n, m)


def gamma_path(n: int, m: int) -> FormulaResult:
    _require(m >= 3, DomainReason.M_TOO_SMALL, f"gamma(P_n x K_m) needs m >= 3, got {m}")
    _require(n >= 2, DomainReason.N_TOO_SMALL, f"gamma(P_n x K_m) needs n >= 2, got {n}")
    family, kind = ProductFamily.PATH_CLIQUE, ParamKind.DOM
    if n == 2:
        return _result(2, FormulaSource.PATH_TWO, family, kind, n, m)
    k, r = divmod(n, 3)
    if r == 0:
        return _result(2 * k + 1, FormulaSource.PATH_3K, family, kind, n, m)
    return _result(2 * k + 2, FormulaSource.PATH_3K_PLUS_1_OR_2, family, kind, n, m)


def gamma_k2(family, n: int) -> FormulaResult:
    """Domination number of the bipartite double cover of P_n or C_n"""
    base = _as_base(family)
    _require(n >= (1 if base == BaseGraphKind.PATH else 2), DomainReason.N_TOO_SMALL, f"n={n} too small")
    product, kind = _as_product(base), ParamKind.DOM
    if base == BaseGraphKind.PATH:
        return _result(2 * _ceil_div(n, 3), FormulaSource.K2_PATH, product, kind, n, 2)
    if n % 2:
        return _result(_ceil_div(2 * n, 3), FormulaSource.K2_CYCLE_ODD, product, kind, n, 2)
    return _result(2 * _ceil_div(n, 3), FormulaSource.K2_CYCLE_EVEN, product, kind, n, 2)


def gamma_path_cycle_base(kind, n: int) -> FormulaResult:
    """gamma(P_n) = gamma(C_n) = ceil(n/3)"""
    base = _as_base(kind)
    _require(n >= (1 if base == BaseGraphKind.PATH else 2), DomainReason.N_TOO_SMALL, f"n={n} too small")
    return _result(_ceil_div(n, 3), FormulaSource.BASE_DOMINATION, base, ParamKind.DOM, n, None)


# Secure domination

def gamma_s_cycle(n: int, m: int) -> FormulaResult:
    _require(m >= 3, DomainReason.M_TOO_SMALL, f"gamma_s(C_n x K_m) needs m >= 3, got {m}")
    _require(n >= 2, DomainReason.N_TOO_SMALL, f"gamma_s(C_n x K_m) needs n >= 2, got {n}")
    family, kind = ProductFamily.CYCLE_CLIQUE, ParamKind.SDOM
    if n >= 3:
        return _result(n, FormulaSource.SECURE_CYCLE_N, family, kind, n, m)
    if m == 3:
        return _result(3, FormulaSource.SECURE_C2_M3, family, kind, n, m)
    return _result(4, FormulaSource.SECURE_C2_M4_PLUS, family, kind, n, m)


def gamma_s_path(n: int, m: int) -> FormulaResult:
    _require(n >= 3, DomainReason.N_TOO_SMALL, f"gamma_s(P_n x K_m) needs n >= 3, got {n}")
    _require(m >= 3, DomainReason.M_TOO_SMALL, f"gamma_s(P_n x K_m) needs m >= 3, got {m}")
    family, kind = ProductFamily.PATH_CLIQUE, ParamKind.SDOM
    if m >= 4:
        return _result(n + 2, FormulaSource.SECURE_PATH_ROW_PLUS_TWO, family, kind, n, m)
    k, r = divmod(n, 3)
    if r == 0:
        return _result(3 * k, FormulaSource.SECURE_PATH_M3_3K, family, kind, n, m)
    return _result(3 * k + 3, FormulaSource.SECURE_PATH_M3_3K_PLUS_3, family, kind, n, m)


def gamma_s_k2(family, n: int) -> FormulaResult:
    """Secure domination number of the bipartite double cover of P_n or C_n"""
    base = _as_base(family)
    _require(n >= (1 if base == BaseGraphKind.PATH else 2), DomainReason.N_TOO_SMALL, f"n={n} too small")
    product, kind = _as_product(base), ParamKind.SDOM
    if base == BaseGraphKind.PATH:
        return _result(2 * _ceil_div(3 * n, 7), FormulaSource.SECURE_K2_PATH, product, kind, n, 2)
    if n % 2:
        return _result(_ceil_div(6 * n, 7), FormulaSource.SECURE_K2_CYCLE_ODD, product, kind, n, 2)
    return _result(2 * _ceil_div(3 * n, 7), FormulaSource.SECURE_K2_CYCLE_EVEN, product, kind, n, 2)


def gamma_s_path_cycle_base(kind, n: int) -> FormulaResult:
    base = _as_base(kind)
    if base == BaseGraphKind.PATH:
        _require(n >= 1, DomainReason.N_TOO_SMALL, f"path order must be positive, got {n}")
        return _result(_ceil_div(3 * n, 7), FormulaSource.SECURE_BASE_PATH, base, ParamKind.SDOM, n, None)
    _require(n >= 2, DomainReason.N_TOO_SMALL, f"cycle order must be at least 2, got {n}")
    if n <= 3:
        return _result(1, FormulaSource.SECURE_BASE_CYCLE_SMALL, base, ParamKind.SDOM, n, None)
    return _result(_ceil_div(3 * n, 7), FormulaSource.SECURE_BASE_CYCLE, base, ParamKind.SDOM, n, None)


# Equalities

def equal_params_claim(family, n: int, m: int) -> List[Tuple[ParamKind, ...]]:
    """Groups of parameters asserted equal on this instance"""
    claims = []
    if m >= 2 and n >= 6:
        claims.append((ParamKind.DOM, ParamKind.IDOM, ParamKind.DOM12))
    if m >= 3 and n >= 2:
        claims.append((ParamKind.SDOM, ParamKind.TWODOM))
    return claims


def gamma_2(family, n: int, m: int) -> FormulaResult:
    """2-domination number, read off the secure domination value"""
    base = _as_base(family)
    _require(m >= 3, DomainReason.UNCOVERED_CASE, f"no 2-domination value for m={m}")
    secure = gamma_s_cycle(n, m) if base == BaseGraphKind.CYCLE else gamma_s_path(n, m)
    return _result(secure.value, FormulaSource.TWODOM_EQUALS_SECURE, _as_product(base), ParamKind.TWODOM, n, m)


def product_domination_bounds(gamma_g: int, gamma_h: int) -> Tuple[int, int]:
    """General bounds gamma(G)+gamma(H)-1 <= gamma(G x H) <= 3 gamma(G) gamma(H) for graphs without isolated vertices"""
    return gamma_g + gamma_h - 1, 3 * gamma_g * gamma_h


def evaluate_formula(kind: ParamKind, family, n: int, m: int) -> FormulaResult:
    """
    Single entry point for tables and the CLI.

    m = 2 goes to the double-cover formulas; P_2 is treated as C_2; i and
    gamma_[1,2] are answered through the equality with gamma when it is
    licensed and m >= 3.
    """
    kind = ParamKind(kind)
    product = ProductFamily(family)
    base = _as_base(product)
    _require(m >= 2, DomainReason.M_TOO_SMALL, f"m must be at least 2, got {m}")

    if kind in (ParamKind.IDOM, ParamKind.DOM12):
        claimed = (ParamKind.DOM, ParamKind.IDOM, ParamKind.DOM12) in equal_params_claim(product, n, m)
        _require(claimed and m >= 3, DomainReason.UNCOVERED_CASE,
                 f"no {kind.label} value for {product.value} n={n} m={m}")
        dom = evaluate_formula(ParamKind.DOM, product, n, m)
        return _result(dom.value, FormulaSource.IDOM_DOM12_EQUAL_DOM, product, kind, n, m)

    if m == 2:
        if kind == ParamKind.DOM:
            return _relabel(gamma_k2(base, n), product)
        if kind == ParamKind.SDOM:
            return _relabel(gamma_s_k2(base, n), product)
        raise FormulaDomainError(DomainReason.UNCOVERED_CASE, f"no {kind.label} value for m=2")

    as_cycle = base == BaseGraphKind.CYCLE or n == 2
    if kind == ParamKind.DOM:
        result = gamma_cycle(n, m) if base == BaseGraphKind.CYCLE else gamma_path(n, m)
    elif kind == ParamKind.SDOM:
        result = gamma_s_cycle(n, m) if as_cycle else gamma_s_path(n, m)
    else:
        result = gamma_2(BaseGraphKind.CYCLE if as_cycle else BaseGraphKind.PATH, n, m)
    return _relabel(result, product)


def _relabel(result: FormulaResult, product: ProductFamily) -> FormulaResult:
    if result.guard.family == product:
        return result
    guard = FormulaGuard(product, result.guard.kind, result.guard.n, result.guard.m)
    return FormulaResult(result.value, result.source, guard)
