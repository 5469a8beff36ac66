# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from collections.abc import Iterable
import csv
import logging
from pathlib import Path
from typing import Any, TextIO
# 3RD
import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, Tolerances
from gateinvariants.datamodel import GateReport, ScatterRecord, Unitary4
from gateinvariants.errors import NonUnitaryError, ParseError
from gateinvariants.linalg.matkit import nearest_unitary, su4_normalize, unitarity_residual


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)

JSON_DIGITS = 12
CSV_DIGITS = 9

RECORD_COLUMNS = ("t", "c1", "c2", "c3", "s1", "s2", "s3", "s4", "schmidt_number", "k_sch", "l", "ep", "is_pe")


def sig(value:float, digits:int=JSON_DIGITS) -> float:
    """Round to `digits` significant digits; NaN and infinities pass through."""
    if not np.isfinite(value):
        return float(value)
    return float(f"{value:.{digits}g}")


def _fmt(value:float|int|bool|None, digits:int=CSV_DIGITS) -> str:
    if value is None: return ""
    if isinstance(value, bool): return "true" if value else "false"
    if isinstance(value, (int, np.integer)): return str(int(value))
    return f"{float(value):.{digits}g}"


# --- --- --- Matrix files --- --- ---

class MatrixFileModel(BaseModel):
    """{"matrix": 4 rows of 4 entries, each [re, im]}"""
    matrix: list[list[tuple[float, float]]] = Field(description="4x4 complex matrix, entries as [re, im]")

    @field_validator("matrix")
    @classmethod
    def _four_by_four(cls, rows:list[list[tuple[float, float]]]) -> list[list[tuple[float, float]]]:
        if len(rows) != 4 or any(len(row) != 4 for row in rows):
            shape = [len(row) for row in rows]
            raise ValueError(f"matrix must have 4 rows of 4 entries, got row lengths {shape}")
        return rows

    def to_array(self) -> NDArray[np.complex128]:
        return np.array([[complex(re, im) for re, im in row] for row in self.matrix], dtype=np.complex128)

    @classmethod
    def from_array(cls, m:NDArray[np.complex128]) -> MatrixFileModel:
        return cls(matrix=[[(sig(z.real), sig(z.imag)) for z in row] for row in np.asarray(m)])
# End of class MatrixFileModel


def matrix_to_unitary(m:NDArray[np.complex128], tol:Tolerances=DEFAULT_TOLERANCES) -> Unitary4:
    """Accept a 4x4 matrix unitary within `tol.parse_unitarity`, project it onto the unitaries and det-normalize."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise ParseError(f"Expected a 4x4 matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ParseError("Matrix has non-finite entries")
    residual = unitarity_residual(arr)
    if residual > tol.parse_unitarity:
        raise NonUnitaryError(residual, tol.parse_unitarity)
    return su4_normalize(nearest_unitary(arr), tol.unitarity)
# End of def matrix_to_unitary


def parse_matrix_json(text:str|bytes, tol:Tolerances=DEFAULT_TOLERANCES) -> Unitary4:
    try:
        model = MatrixFileModel.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise ParseError(f"Invalid matrix file ({e.error_count()} error(s)), first at '{where}': {first['msg']}") from e
    return matrix_to_unitary(model.to_array(), tol)
# End of def parse_matrix_json


def load_matrix_file(path:Path, tol:Tolerances=DEFAULT_TOLERANCES) -> Unitary4:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise ParseError(f"Cannot read matrix file '{path}': {e}") from e
    logger.debug(f"Parsing matrix file {path}")
    return parse_matrix_json(text, tol)


def save_matrix_file(u:Unitary4|NDArray[np.complex128], path:Path) -> None:
    m = u.matrix if isinstance(u, Unitary4) else u
    Path(path).write_text(MatrixFileModel.from_array(m).model_dump_json(indent=2), encoding="utf-8")


# --- --- --- Gate report, JSON --- --- ---

class InvariantsModel(BaseModel):
    g1_re: float
    g1_im: float
    abs_g1: float
    g2: float
# End of class InvariantsModel


class MonteCarloModel(BaseModel):
    mean: float
    standard_error: float|None
    n: int
# End of class MonteCarloModel


class ClassificationModel(BaseModel):
    is_local: bool
    is_perfect_entangler: bool
    is_special_perfect_entangler: bool
    named_equivalent: str|None
    region: str
    within_invariant_bounds: bool
# End of class ClassificationModel


class GateReportModel(BaseModel):
    """JSON form of a GateReport, numbers at 12 significant digits."""
    model_config = ConfigDict(ser_json_inf_nan="null")

    coordinates: list[float]
    invariants: InvariantsModel
    schmidt_coefficients: list[float]
    schmidt_number: int
    k_sch: float
    l: float
    l_routes: dict[str, float]
    l_max_deviation: float
    l_swapped: float
    concurrence: float|None
    entangling_capability: float
    ep: float
    ep_linear: float
    ep_montecarlo: MonteCarloModel|None = None
    classification: ClassificationModel
    matrix: list[list[tuple[float, float]]]

    @classmethod
    def from_report(cls, report:GateReport) -> GateReportModel:
        inv = report.invariants
        mc = report.ep_montecarlo
        return cls(
            coordinates=[sig(v) for v in report.point.to_list()],
            invariants=InvariantsModel(g1_re=sig(inv.g1.real), g1_im=sig(inv.g1.imag), abs_g1=sig(inv.abs_g1), g2=sig(inv.g2)),
            schmidt_coefficients=[sig(v) for v in report.spectrum.s],
            schmidt_number=report.schmidt_number,
            k_sch=sig(report.k_sch),
            l=sig(report.l),
            l_routes={k: sig(v) for k, v in report.l_routes.items()},
            l_max_deviation=sig(report.l_max_deviation),
            l_swapped=sig(report.l_swapped),
            concurrence=None if report.concurrence is None else sig(report.concurrence),
            entangling_capability=sig(report.entangling_capability),
            ep=sig(report.ep_invariant),
            ep_linear=sig(report.ep_linear),
            ep_montecarlo=None if mc is None else MonteCarloModel(
                mean=sig(mc.mean), standard_error=None if not np.isfinite(mc.standard_error) else sig(mc.standard_error), n=mc.n),
            classification=ClassificationModel(**report.gate_class.to_dict(), within_invariant_bounds=report.gate_class.within_invariant_bounds),
            matrix=MatrixFileModel.from_array(report.unitary.matrix).matrix,
        )
    # End of def from_report
# End of class GateReportModel


def report_to_json(report:GateReport, indent:int|None=2) -> str:
    return GateReportModel.from_report(report).model_dump_json(indent=indent)


# --- --- --- Gate report, CSV --- --- ---

def report_rows(report:GateReport) -> list[tuple[str, Any]]:
    inv = report.invariants
    gc = report.gate_class
    rows:list[tuple[str, Any]] = [
        ("c1", report.point.c1), ("c2", report.point.c2), ("c3", report.point.c3),
        ("g1_re", inv.g1.real), ("g1_im", inv.g1.imag), ("abs_g1", inv.abs_g1), ("g2", inv.g2),
        *((f"s{i + 1}", s) for i, s in enumerate(report.spectrum.s)),
        ("schmidt_number", report.schmidt_number),
        ("k_sch", report.k_sch),
        ("l", report.l),
        *((f"l_{route}", v) for route, v in report.l_routes.items()),
        ("l_max_deviation", report.l_max_deviation),
        ("l_swapped", report.l_swapped),
        ("concurrence", report.concurrence),
        ("entangling_capability", report.entangling_capability),
        ("ep", report.ep_invariant),
        ("ep_linear", report.ep_linear),
    ]
    if report.ep_montecarlo is not None:
        rows += [("ep_montecarlo", report.ep_montecarlo.mean), ("ep_montecarlo_se", report.ep_montecarlo.standard_error), ("ep_montecarlo_n", report.ep_montecarlo.n)]
    rows += [
        ("is_local", gc.is_local),
        ("is_pe", gc.is_perfect_entangler),
        ("is_special_pe", gc.is_special_perfect_entangler),
        ("named_equivalent", "" if gc.named_equivalent is None else str(gc.named_equivalent)),
        ("region", str(gc.region)),
    ]
    return rows
# End of def report_rows


def write_report_csv(report:GateReport, stream:TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(("quantity", "value"))
    for key, value in report_rows(report):
        writer.writerow((key, value if isinstance(value, str) else _fmt(value)))


# --- --- --- Records, CSV --- --- ---

def record_row(rec:ScatterRecord) -> list[str]:
    return [
        _fmt(rec.t),
        *(_fmt(v) for v in rec.point.to_list()),
        *(_fmt(v) for v in rec.spectrum.s),
        _fmt(rec.schmidt_number),
        _fmt(rec.k_sch),
        _fmt(rec.l),
        _fmt(rec.ep),
        _fmt(rec.is_pe),
    ]


def write_records_csv(records:Iterable[ScatterRecord], stream:TextIO, pearson:float|None=None) -> int:
    """Header, one row per record and, when given, a closing `pearson,<value>` line. Returns the row count."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(RECORD_COLUMNS)
    count = 0
    for rec in records:
        writer.writerow(record_row(rec))
        count += 1
    if pearson is not None:
        writer.writerow(("pearson", _fmt(pearson)))
    return count
# End of def write_records_csv


# --- --- --- Verification summary, JSON --- --- ---

class CheckModel(BaseModel):
    name: str
    ok: bool
    detail: str
    metrics: dict[str, float|None] = Field(default_factory=dict)
# End of class CheckModel


class VerificationSummaryModel(BaseModel):
    model_config = ConfigDict(ser_json_inf_nan="null")

    ok: bool
    n: int
    seed: int
    passed: int
    failed: int
    checks: list[CheckModel]
# End of class VerificationSummaryModel
