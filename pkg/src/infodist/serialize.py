"""Scenario files and report documents.

One JSON dialect covers both input and output: complex numbers are
two-element [re, im] arrays, matrices are row-major nested arrays of those
pairs. Floats are rendered with Python's shortest round-trip repr (the
json module default), so emit-then-parse reproduces every real bit for bit.
Parse failures name the offending field path.
"""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass
from typing import Any

import numpy as np

from .errors import ContractError, ScenarioFileError
from .optimize import OptimizationResult, SweepRow, SweepSummary
from .tradeoff import NoncommReport, Scenario, TradeoffReport

SCHEMA_VERSION = 1

SWEEP_CSV_COLUMNS = [
    "seed", "dim_a", "dim_b", "time", "lhs", "fid_a", "fid_b",
    "norm_a", "norm_b", "norm_int", "rhs", "slack",
]


def complex_to_pair(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def vector_to_pairs(v) -> list[list[float]]:
    return [complex_to_pair(z) for z in np.asarray(v, dtype=complex)]


def matrix_to_pairs(m) -> list[list[list[float]]]:
    return [[complex_to_pair(z) for z in row] for row in np.asarray(m, dtype=complex)]


def _parse_complex(obj: Any, path: str) -> complex:
    if (
        not isinstance(obj, (list, tuple))
        or len(obj) != 2
        or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in obj)
    ):
        raise ScenarioFileError(path, f"expected a [re, im] pair, got {obj!r}")
    return complex(obj[0], obj[1])


def parse_vector(obj: Any, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ScenarioFileError(path, "expected a nonempty list of [re, im] pairs")
    return np.array([_parse_complex(z, f"{path}[{i}]") for i, z in enumerate(obj)])


def parse_matrix(obj: Any, path: str) -> np.ndarray:
    if not isinstance(obj, list) or not obj:
        raise ScenarioFileError(path, "expected a nonempty list of rows")
    rows = []
    for i, row in enumerate(obj):
        if not isinstance(row, list) or len(row) != len(obj):
            raise ScenarioFileError(f"{path}[{i}]", "matrix must be square, row-major")
        rows.append([_parse_complex(z, f"{path}[{i}][{j}]") for j, z in enumerate(row)])
    return np.array(rows)


def _require_field(doc: dict, name: str, path: str = "") -> Any:
    full = f"{path}.{name}" if path else name
    if name not in doc:
        raise ScenarioFileError(full, "missing required field")
    return doc[name]


def _parse_dims(doc: dict) -> tuple[int, int]:
    dims = _require_field(doc, "dims")
    if not isinstance(dims, dict):
        raise ScenarioFileError("dims", f"expected an object with a and b, got {dims!r}")
    out = []
    for key in ("a", "b"):
        value = _require_field(dims, key, "dims")
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ScenarioFileError(f"dims.{key}", f"expected a positive integer, got {value!r}")
        out.append(value)
    return out[0], out[1]


def _parse_time(doc: dict) -> float:
    value = _require_field(doc, "time")
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ScenarioFileError("time", f"expected a number, got {value!r}")
    return float(value)


def scenario_from_document(doc: dict) -> Scenario:
    """Build a Scenario from a parsed document, naming bad fields.

    Generated evolution uses fields h_a, h_b, h_int; an explicit unitary uses
    l_a, l_b, l_int plus u. Validation failures surface as ScenarioFileError
    on the nearest responsible field.
    """
    if not isinstance(doc, dict):
        raise ScenarioFileError("", f"expected a JSON object, got {type(doc).__name__}")
    dim_a, dim_b = _parse_dims(doc)

    generated = "h_a" in doc or "h_b" in doc or "h_int" in doc
    explicit = "u" in doc or "l_a" in doc or "l_b" in doc or "l_int" in doc
    if generated and explicit:
        raise ScenarioFileError("u", "give either h_a/h_b/h_int or l_a/l_b/l_int with u, not both")
    if not generated and not explicit:
        raise ScenarioFileError("h_a", "missing Hamiltonian or conserved-quantity fields")

    prefix = "h" if generated else "l"
    part_a = parse_matrix(_require_field(doc, f"{prefix}_a"), f"{prefix}_a")
    part_b = parse_matrix(_require_field(doc, f"{prefix}_b"), f"{prefix}_b")
    part_int = parse_matrix(_require_field(doc, f"{prefix}_int"), f"{prefix}_int")
    unitary = parse_matrix(_require_field(doc, "u"), "u") if explicit else None

    psi0 = parse_vector(_require_field(doc, "psi0"), "psi0")
    psi1 = parse_vector(_require_field(doc, "psi1"), "psi1")
    sigma = parse_matrix(_require_field(doc, "sigma"), "sigma")
    time = _parse_time(doc)

    field_of = {
        "part_int": f"{prefix}_int", "part_a": f"{prefix}_a", "part_b": f"{prefix}_b",
        "psi0": "psi0", "psi1": "psi1", "sigma": "sigma", "time": "time",
        "unitary": "u",
    }
    try:
        return Scenario(
            dim_a=dim_a, dim_b=dim_b,
            part_a=part_a, part_b=part_b, part_int=part_int,
            psi0=psi0, psi1=psi1, sigma=sigma, time=time, unitary=unitary,
        )
    except ContractError as exc:
        message = str(exc)
        if "orthogonal" in message:
            raise ScenarioFileError("psi1", message) from exc
        for internal, field in field_of.items():
            if internal in message:
                raise ScenarioFileError(field, message) from exc
        raise ScenarioFileError("", message) from exc


def scenario_to_document(s: Scenario) -> dict:
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "dims": {"a": s.dim_a, "b": s.dim_b},
    }
    prefix = "h" if s.generated else "l"
    doc[f"{prefix}_a"] = matrix_to_pairs(s.part_a)
    doc[f"{prefix}_b"] = matrix_to_pairs(s.part_b)
    doc[f"{prefix}_int"] = matrix_to_pairs(s.part_int)
    if not s.generated:
        doc["u"] = matrix_to_pairs(s.unitary)
    doc["psi0"] = vector_to_pairs(s.psi0)
    doc["psi1"] = vector_to_pairs(s.psi1)
    doc["sigma"] = matrix_to_pairs(s.sigma)
    doc["time"] = s.time
    return doc


def load_scenario(path) -> Scenario:
    return scenario_from_document(_load_json(path))


def _load_json(path) -> dict:
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise ScenarioFileError("", f"invalid JSON: {exc}") from exc


@dataclass(frozen=True)
class FixedParts:
    """Everything minimize_interaction needs except the interaction itself."""

    dim_a: int
    dim_b: int
    h_a: np.ndarray
    h_b: np.ndarray
    psi0: np.ndarray
    psi1: np.ndarray
    sigma: np.ndarray
    time: float
    basis: tuple[np.ndarray, ...] | None


def fixed_parts_from_document(doc: dict) -> FixedParts:
    if not isinstance(doc, dict):
        raise ScenarioFileError("", f"expected a JSON object, got {type(doc).__name__}")
    dim_a, dim_b = _parse_dims(doc)
    basis = None
    if "basis" in doc:
        raw = doc["basis"]
        if not isinstance(raw, list) or not raw:
            raise ScenarioFileError("basis", "expected a nonempty list of matrices")
        basis = tuple(parse_matrix(b, f"basis[{i}]") for i, b in enumerate(raw))
    return FixedParts(
        dim_a=dim_a,
        dim_b=dim_b,
        h_a=parse_matrix(_require_field(doc, "h_a"), "h_a"),
        h_b=parse_matrix(_require_field(doc, "h_b"), "h_b"),
        psi0=parse_vector(_require_field(doc, "psi0"), "psi0"),
        psi1=parse_vector(_require_field(doc, "psi1"), "psi1"),
        sigma=parse_matrix(_require_field(doc, "sigma"), "sigma"),
        time=_parse_time(doc),
        basis=basis,
    )


def load_fixed_parts(path) -> FixedParts:
    return fixed_parts_from_document(_load_json(path))


def save_scenario(s: Scenario, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(scenario_to_document(s), fh, indent=2)
        fh.write("\n")


def report_to_document(report) -> dict:
    """Machine-readable rendering of any report type, tagged by kind."""
    if isinstance(report, TradeoffReport):
        doc = asdict(report)
        return {"schema_version": SCHEMA_VERSION, "kind": "tradeoff", **doc}
    if isinstance(report, NoncommReport):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "noncommutativity",
            "n0": matrix_to_pairs(report.n0),
            "n1": matrix_to_pairs(report.n1),
            "identity_residual": report.identity_residual,
        }
    if isinstance(report, SweepSummary):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "sweep",
            "n_instances": report.n_instances,
            "min_slack": report.min_slack,
            "mean_slack": report.mean_slack,
            "violations": report.violations,
            "rows": [asdict(row) for row in report.rows],
        }
    if isinstance(report, OptimizationResult):
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "optimization",
            "best_coefficients": [float(c) for c in report.best_coefficients],
            "best_norm_int": report.best_norm_int,
            "achieved_fid_a": report.achieved_fid_a,
            "achieved_fid_b": report.achieved_fid_b,
            "feasible": report.feasible,
            "corollary_lower_bound": report.corollary_lower_bound,
            "evaluations": report.evaluations,
        }
    raise TypeError(f"unsupported report type {type(report).__name__}")


def document_to_report(doc: dict):
    """Inverse of report_to_document."""
    kind = doc.get("kind")
    if kind == "tradeoff":
        fields = {k: v for k, v in doc.items() if k not in ("schema_version", "kind")}
        return TradeoffReport(**fields)
    if kind == "noncommutativity":
        return NoncommReport(
            n0=parse_matrix(doc["n0"], "n0"),
            n1=parse_matrix(doc["n1"], "n1"),
            identity_residual=doc["identity_residual"],
        )
    if kind == "sweep":
        rows = tuple(SweepRow(**row) for row in doc["rows"])
        return SweepSummary(
            n_instances=doc["n_instances"],
            min_slack=doc["min_slack"],
            mean_slack=doc["mean_slack"],
            violations=doc["violations"],
            rows=rows,
        )
    if kind == "optimization":
        return OptimizationResult(
            best_coefficients=np.array(doc["best_coefficients"], dtype=float),
            best_norm_int=doc["best_norm_int"],
            achieved_fid_a=doc["achieved_fid_a"],
            achieved_fid_b=doc["achieved_fid_b"],
            feasible=doc["feasible"],
            corollary_lower_bound=doc["corollary_lower_bound"],
            evaluations=doc["evaluations"],
        )
    raise ScenarioFileError("kind", f"unknown report kind {kind!r}")


def dump_document(doc: dict, fp=None) -> str:
    text = json.dumps(doc, indent=2)
    if fp is not None:
        fp.write(text + "\n")
    return text


def write_sweep_csv(summary: SweepSummary, fp) -> None:
    """CSV rows for a sweep: fixed column order, full-precision floats, LF endings."""
    writer = csv.writer(fp, lineterminator="\n")
    writer.writerow(SWEEP_CSV_COLUMNS)
    for row in summary.rows:
        writer.writerow([repr(getattr(row, c)) if isinstance(getattr(row, c), float)
                         else getattr(row, c) for c in SWEEP_CSV_COLUMNS])
