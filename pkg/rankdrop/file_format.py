"""Module containing the JSON file formats.

Every rational is written as a canonical string, "n" or "n/d", and read
back exactly. Attribute names are snake_case in Python and camelCase in
the files. Configuration files are checked against
``schemas/config.schema.json`` before they are structured.
"""

import json
import sys
from dataclasses import dataclass, field, fields, is_dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Union

import jsonschema
from cattrs import Converter
from cattrs.errors import BaseValidationError
from cattrs.gen import (
    make_dict_structure_fn,
    make_dict_unstructure_fn,
    override,
)

from .classifier import Condition, InvariantSummary, Report
from .constants import CONFIG_FILE_VERSION
from .cubic_surface import CubicForm, LineP3, Pencil
from .errors import ConfigFormatError
from .exact_linalg import QMatrix, rat_to_str, to_rat
from .facesplit import matrix_to_vec
from .invariants import Sextuple
from .projective import (
    Config,
    ExtRat,
    Homography,
    PointP1,
    PointP2,
    ProjectivePoint,
)

if sys.version_info >= (3, 10):
    light_dataclass = dataclass(kw_only=True, eq=False, match_args=False)
else:
    light_dataclass = dataclass(eq=False)


@light_dataclass
class PointEntry:
    x: List[Fraction]
    y: List[Fraction]


@light_dataclass
class ConfigFile:
    points: List[PointEntry]
    version: str = CONFIG_FILE_VERSION

    @classmethod
    def from_config(cls, c: Config) -> "ConfigFile":
        return cls(
            points=[
                PointEntry(x=list(p.x.vector), y=list(p.y.vector))
                for p in c.pairs
            ]
        )

    def to_config(self) -> Config:
        try:
            return Config.of(
                [p.x for p in self.points], [p.y for p in self.points]
            )
        except ValueError as error:
            raise ConfigFormatError(str(error)) from error


@light_dataclass
class DirectConditionEntry:
    kind: str
    indices: List[int]
    side: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)


@light_dataclass
class ConditionEntry:
    kind: str
    indices: List[int]
    side: Optional[str] = None
    witness: Dict[str, Any] = field(default_factory=dict)
    inner: Optional[DirectConditionEntry] = None


@light_dataclass
class InvariantsFile:
    coble_x: Optional[List[Fraction]] = None
    coble_y: Optional[List[Fraction]] = None
    joubert_x: Optional[List[Fraction]] = None
    joubert_y: Optional[List[Fraction]] = None
    proportional: Optional[bool] = None


@light_dataclass
class ReportFile:
    k: int
    rank: int
    deficient: bool
    status: str
    conditions: List[ConditionEntry] = field(default_factory=list)
    observations: List[ConditionEntry] = field(default_factory=list)
    invariants: Optional[InvariantsFile] = None
    deficient_subsets: List[List[int]] = field(default_factory=list)
    timings: Dict[str, str] = field(default_factory=dict)


@light_dataclass
class SurfaceFile:
    pencil: List[List[Fraction]]
    cubic_form: List[Fraction]
    lines: List[List[Fraction]]
    double_six_verified: bool


@light_dataclass
class FuzzTally:
    regime: str
    k: int
    total: int = 0
    deficient: int = 0


@light_dataclass
class FuzzViolation:
    index: int
    regime: str
    k: int
    reason: str
    config: ConfigFile


@light_dataclass
class FuzzSummaryFile:
    seed: int
    count: int
    tallies: List[FuzzTally] = field(default_factory=list)
    violations: List[FuzzViolation] = field(default_factory=list)


file_format_converter = Converter()


def convert_class_keys(string: str) -> str:
    """Convert from snake_case to camelCase."""
    return "".join(
        word.capitalize() if idx > 0 else word
        for idx, word in enumerate(string.split("_"))
    )


def _is_file_class(cls: Any) -> bool:
    return is_dataclass(cls) and cls.__module__ == __name__


def structure(cls: type) -> Any:
    """Hook to convert names when reading a file."""
    return make_dict_structure_fn(
        cls,
        file_format_converter,
        **{  # type: ignore[arg-type]
            a.name: override(rename=convert_class_keys(a.name))
            for a in fields(cls)
        },
    )


def unstructure(cls: type) -> Any:
    """Hook to convert names when writing a file."""
    return make_dict_unstructure_fn(
        cls,
        file_format_converter,
        **{  # type: ignore[arg-type]
            a.name: override(rename=convert_class_keys(a.name))
            for a in fields(cls)
        },
    )


file_format_converter.register_structure_hook_factory(
    _is_file_class, structure
)
file_format_converter.register_unstructure_hook_factory(
    _is_file_class, unstructure
)

file_format_converter.register_structure_hook(
    Fraction, lambda value, _: to_rat(value)
)
file_format_converter.register_unstructure_hook(Fraction, rat_to_str)


def _coords(point: ProjectivePoint) -> List[str]:
    return [str(c) for c in point.coords]


def _rows(m: QMatrix) -> List[List[str]]:
    return [[rat_to_str(v) for v in row] for row in m.entries]


file_format_converter.register_unstructure_hook(PointP2, _coords)
file_format_converter.register_unstructure_hook(PointP1, _coords)
file_format_converter.register_unstructure_hook(QMatrix, _rows)
file_format_converter.register_unstructure_hook(
    Homography, lambda h: _rows(h.matrix)
)
file_format_converter.register_unstructure_hook(
    Sextuple, lambda s: [rat_to_str(v) for v in s]
)
file_format_converter.register_unstructure_hook(ExtRat, str)


def _schema(name: str) -> Any:
    text = (resources.files("rankdrop") / "schemas" / name).read_text()
    return json.loads(text)


def parse_config(data: Mapping[str, Any]) -> ConfigFile:
    """Validate and structure a decoded configuration document."""
    try:
        jsonschema.validate(data, _schema("config.schema.json"))
        return file_format_converter.structure(data, ConfigFile)
    except jsonschema.ValidationError as error:
        raise ConfigFormatError(error.message) from error
    except (BaseValidationError, ValueError, TypeError) as error:
        raise ConfigFormatError(str(error)) from error


def load_config(source: Union[str, Path]) -> Config:
    """Read a configuration file; "-" reads standard input."""
    try:
        if str(source) == "-":
            text = sys.stdin.read()
        else:
            text = Path(source).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigFormatError(str(error)) from error
    return parse_config(data).to_config()


def dumps(document: Any) -> str:
    """Serialize a file dataclass as indented JSON."""
    return json.dumps(file_format_converter.unstructure(document), indent=2)


def _direct_entry(c: Condition) -> DirectConditionEntry:
    return DirectConditionEntry(
        kind=c.kind.value,
        indices=list(c.indices),
        side=c.side.value if c.side is not None else None,
        witness={
            convert_class_keys(key): file_format_converter.unstructure(value)
            for key, value in c.witness.items()
        },
    )


def condition_entry(c: Condition) -> ConditionEntry:
    direct = _direct_entry(c)
    return ConditionEntry(
        kind=direct.kind,
        indices=direct.indices,
        side=direct.side,
        witness=direct.witness,
        inner=_direct_entry(c.inner) if c.inner is not None else None,
    )


def _values(s: Optional[Sextuple]) -> Optional[List[Fraction]]:
    return None if s is None else list(s)


def invariants_file(
    summary: InvariantSummary, proportional: Optional[bool] = None
) -> InvariantsFile:
    return InvariantsFile(
        coble_x=_values(summary.coble_x),
        coble_y=_values(summary.coble_y),
        joubert_x=_values(summary.joubert_x),
        joubert_y=_values(summary.joubert_y),
        proportional=proportional,
    )


def report_file(
    report: Report, timings: Optional[Mapping[str, str]] = None
) -> ReportFile:
    return ReportFile(
        k=report.k,
        rank=report.rank,
        deficient=report.deficient,
        status=report.status.value,
        conditions=[condition_entry(c) for c in report.conditions],
        observations=[condition_entry(c) for c in report.observations],
        invariants=(
            invariants_file(report.invariants)
            if report.invariants is not None
            else None
        ),
        deficient_subsets=[list(s) for s in report.deficient_subsets],
        timings=dict(timings or {}),
    )


def surface_file(
    pencil: Pencil,
    form: CubicForm,
    lines: Sequence[LineP3],
    verified: bool,
) -> SurfaceFile:
    return SurfaceFile(
        pencil=[list(matrix_to_vec(m)) for m in pencil.basis],
        cubic_form=list(form.coefficients),
        lines=[[Fraction(v) for v in line.plucker] for line in lines],
        double_six_verified=verified,
    )
