# table_runner.py
"""
Grid tables comparing closed forms, exact solver values and construction sizes
"""

import logging
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

import pandas as pd

from closed_forms import FormulaDomainError, evaluate_formula
from config_schemas import SolveConfig, TableRequestModel
from constants import TableFormat
from constructions import build, construction_for
from graph_core import ProductFamily, product_instance
from report_schemas import TableRowModel, to_json_line
from solvers import BudgetExceededError, solve_min
from verifiers import ParamKind, verify

logger = logging.getLogger("GridTables")

_RANGE_PATTERN = re.compile(r'^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$')


class RangeParseError(ValueError):
    """Raised when a range argument is not of the form A..B or A"""
    pass


@dataclass
class TableRow:
    family: ProductFamily
    kind: ParamKind
    n: int
    m: int
    formula_value: Optional[int] = None
    solver_value: Optional[int] = None
    construction_size: Optional[int] = None
    note: str = ""

    @property
    def agree(self) -> bool:
        """All present values are equal"""
        present = {v for v in (self.formula_value, self.solver_value, self.construction_size) if v is not None}
        return len(present) <= 1

    def to_model(self) -> TableRowModel:
        return TableRowModel(
            family=self.family.value,
            param=self.kind.value,
            n=self.n,
            m=self.m,
            formula=self.formula_value,
            solver=self.solver_value,
            construction=self.construction_size,
            agree=self.agree,
        )

    def describe_discrepancy(self) -> str:
        values = [f"{name} {value}" for name, value in (("formula", self.formula_value),
                                                          ("solver", self.solver_value),
                                                          ("construction", self.construction_size))
                  if value is not None]
        return f"DISCREPANCY {self.family.value} {self.kind.value} n={self.n} m={self.m}: {', '.join(values)}"


def parse_range(text: str) -> Tuple[int, int]:
    """'A..B' -> (A, B); a single integer A means A..A"""
    match = _RANGE_PATTERN.match(text or "")
    if not match:
        raise RangeParseError(f"expected a range like 3..7, got {text!r}")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    if low > high:
        raise RangeParseError(f"empty range {text!r}")
    return low, high


def compute_row(kind: ParamKind, family: ProductFamily, n: int, m: int,
                with_solver: bool = False, with_construction: bool = False,
                cfg: Optional[SolveConfig] = None) -> TableRow:
    """Evaluate one grid point; failures become absent values with a note"""
    kind = ParamKind(kind)
    family = ProductFamily(family)
    row = TableRow(family, kind, n, m)
    notes = []

    try:
        row.formula_value = evaluate_formula(kind, family, n, m).value
    except FormulaDomainError as e:
        logger.debug(f"no formula for {kind.value} {family.value} n={n} m={m}: {e}")

    g = product_instance(family, n, m)
    if with_solver:
        try:
            row.solver_value = solve_min(g, kind, cfg).value
        except BudgetExceededError as e:
            logger.warning(f"{kind.value} {family.value} n={n} m={m}: {e}")
            notes.append("budget")

    if with_construction:
        construction = construction_for(kind, family, n, m)
        if construction is not None:
            vertex_set = build(construction, n, m)
            if verify(g, kind, vertex_set).ok:
                row.construction_size = len(vertex_set)
            else:
                notes.append(f"{construction.value} is not {kind.description}")

    row.note = "; ".join(notes)
    return row


def run_table(request: TableRequestModel, cfg: Optional[SolveConfig] = None) -> List[TableRow]:
    """One row per (n, m) of the request, ordered by (n, m)"""
    kind = request.param
    family = request.family
    grid = request.grid()
    logger.info(f"table {kind.value} {family.value}: {len(grid)} grid points, {request.workers} worker(s)")

    if request.workers > 1 and len(grid) > 1:
        with ProcessPoolExecutor(max_workers=request.workers) as pool:
            futures = [pool.submit(compute_row, kind, family, n, m,
                                   request.with_solver, request.with_construction, cfg)
                       for n, m in grid]
            rows = [future.result() for future in futures]
    else:
        rows = [compute_row(kind, family, n, m, request.with_solver, request.with_construction, cfg)
                for n, m in grid]

    for row in rows:
        if not row.agree:
            logger.warning(row.describe_discrepancy())
    return rows


def summarize(rows: List[TableRow]) -> Tuple[int, int, List[TableRow]]:
    """(agreements, total, discrepant rows)"""
    discrepancies = [row for row in rows if not row.agree]
    return len(rows) - len(discrepancies), len(rows), discrepancies


def _cell(value: Optional[int]) -> str:
    return TableFormat.MISSING if value is None else str(value)


def render_text(rows: List[TableRow]) -> str:
    """Aligned table, summary line and one line per discrepancy"""
    frame = pd.DataFrame(
        [[row.family.value, row.kind.value, row.n, row.m, _cell(row.formula_value),
          _cell(row.solver_value), _cell(row.construction_size), "yes" if row.agree else "NO", row.note]
         for row in rows],
        columns=TableFormat.COLUMNS,
    )
    agreements, total, discrepancies = summarize(rows)
    lines = [frame.to_string(index=False) if rows else "(no rows)",
             TableFormat.SUMMARY_TEMPLATE.format(agreements=agreements, total=total)]
    lines.extend(row.describe_discrepancy() for row in discrepancies)
    return "\n".join(lines) + "\n"


def render_json(rows: List[TableRow]) -> List[str]:
    return [to_json_line(row.to_model()) for row in rows]
