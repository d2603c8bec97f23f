#!/usr/bin/env python3
"""
Catalog of fixed-point data and the JSON document format

Generators:
- cpn_weighted: CP^n with the circle acting by blocks of equal weights
- isolated_from_weights: isolated fixed points given by weight vectors
- blowup_plane: the blown-up projective plane, shipped as package data

save_data/load_data convert between FixedPointData and the schema in
docs/SCHEMA.md; all rationals travel as strings.
"""
import json
import logging
from dataclasses import dataclass
from importlib import resources
from math import comb
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

from sympy.polys.domains import QQ

from .cohomology import (
    ClassExpr,
    ComponentModel,
    FixedPointData,
    Generator,
    NormalLine,
    TruncatedCohomology,
    parse_class,
    validate_data,
)
from .errors import ExpressionParseError, SchemaError, ValidationError
from .residue import PROJECTIVE_SPACE
from .scalars import RATIONAL, Rational, format_rational, parse_rational, to_rational

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
BLOWUP_RESOURCE = "blowup_plane.json"


@dataclass(frozen=True)
class WeightSpec:
    """Blocks (lambda_i, n_i + 1); n = sum of block sizes - 1"""

    blocks: Tuple[Tuple[Rational, int], ...]

    def __post_init__(self):
        if not self.blocks:
            raise ValidationError("weights", "at least one block is required")
        seen = set()
        for weight, size in self.blocks:
            if size < 1:
                raise ValidationError("weights", f"block size {size} for weight {format_rational(weight)} is < 1")
            if weight in seen:
                raise ValidationError("weights", f"repeated weight {format_rational(weight)}")
            seen.add(weight)

    @classmethod
    def parse(cls, text: str) -> "WeightSpec":
        """``"0*2,5*1"``: weight 0 with block size 2, weight 5 with block size 1"""
        blocks = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                raise ValidationError("weights", f"empty block in {text!r}")
            weight_text, star, size_text = item.rpartition("*")
            if not star:
                weight_text, size_text = item, "1"
            try:
                blocks.append((parse_rational(weight_text), int(size_text)))
            except ValueError as exc:
                raise ValidationError("weights", f"bad block {item!r}: {exc}") from exc
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return sum(size for _, size in self.blocks) - 1

    def __str__(self):
        return ",".join(f"{format_rational(w)}*{size}" for w, size in self.blocks)


def _point_cohomology(name: str) -> TruncatedCohomology:
    return TruncatedCohomology(name, 0)


def _projective_cohomology(name: str, r: int) -> TruncatedCohomology:
    exps = (r,)
    return TruncatedCohomology(name, r, [Generator("x", 1, r + 1)], {exps: QQ.one})


def cpn_weighted(spec: Union[WeightSpec, str], name: str = None) -> FixedPointData:
    """Components M_i = CP^{n_i} with normal weights lambda_j - lambda_i (n_j + 1 times)"""
    if isinstance(spec, str):
        spec = WeightSpec.parse(spec)
    n = spec.n
    if n < 1:
        raise ValidationError("weights", "CP^0 has no tangent space; use at least two weights in total")
    components = []
    for i, (weight_i, size_i) in enumerate(spec.blocks, start=1):
        r = size_i - 1
        comp_name = f"M{i}"
        if r == 0:
            algebra = _point_cohomology(comp_name)
            euler = ClassExpr.zero(algebra, RATIONAL)
            tangent: Tuple[ClassExpr, ...] = ()
        else:
            algebra = _projective_cohomology(comp_name, r)
            x = ClassExpr.generator(algebra, RATIONAL, "x")
            euler = x
            tangent = tuple((x ** k).scale(comb(r + 1, k)) for k in range(1, r + 1))
        normal = tuple(
            NormalLine(weight_j - weight_i, euler)
            for j, (weight_j, size_j) in enumerate(spec.blocks, start=1)
            if j != i
            for _ in range(size_j)
        )
        components.append(ComponentModel(comp_name, algebra, tangent, normal))
    data = FixedPointData(name or f"CP{n}[{spec}]", n, tuple(components), PROJECTIVE_SPACE)
    validate_data(data)
    logger.debug("generated %s with %d components", data.name, len(components))
    return data


def isolated_from_weights(n: int, points: Sequence[Tuple[str, Sequence[Any]]], name: str = "points") -> FixedPointData:
    """Dimension-0 components with normals (lambda, beta = 0)"""
    components = []
    for index, (point_name, weights) in enumerate(points):
        path = f"points[{index}]"
        if len(weights) != n:
            raise ValidationError(path, f"expected {n} weights for {point_name!r}, got {len(weights)}")
        algebra = _point_cohomology(point_name)
        zero = ClassExpr.zero(algebra, RATIONAL)
        normal = []
        for j, weight in enumerate(weights):
            weight = to_rational(weight)
            if not weight:
                raise ValidationError(f"{path}.weights[{j}]", "zero weight")
            normal.append(NormalLine(weight, zero))
        components.append(ComponentModel(point_name, algebra, (), tuple(normal)))
    data = FixedPointData(name, n, tuple(components))
    validate_data(data)
    return data


def parse_point(text: str) -> Tuple[str, List[Rational]]:
    """``"p0:1,2"`` -> ("p0", [1, 2])"""
    point_name, colon, weights = text.partition(":")
    if not colon or not point_name.strip():
        raise ValidationError("point", f"expected NAME:W1,W2,... got {text!r}")
    try:
        return point_name.strip(), [parse_rational(w) for w in weights.split(",")]
    except ValueError as exc:
        raise ValidationError(f"point {point_name.strip()}", str(exc)) from exc


def blowup_plane() -> FixedPointData:
    """Blown-up projective plane: four torus-fixed points for the subgroup (1, 3)"""
    text = resources.files("residue_localizer").joinpath("data").joinpath(BLOWUP_RESOURCE).read_text(encoding="utf-8")
    return load_data(text, source=BLOWUP_RESOURCE)


# ---------------------------------------------------------------------------
# JSON documents
# ---------------------------------------------------------------------------

def _component_to_dict(comp: ComponentModel) -> Dict[str, Any]:
    algebra = comp.cohomology
    generators = []
    for gen in algebra.generators:
        entry: Dict[str, Any] = {"name": gen.name, "degree": gen.degree}
        if gen.nilpotent_power is not None:
            entry["power"] = gen.nilpotent_power
        generators.append(entry)
    return {
        "name": comp.name,
        "dim": comp.dim,
        "generators": generators,
        "tangent_chern": [str(c) for c in comp.tangent_chern],
        "integrals": {algebra.monomial_key(m): format_rational(v) for m, v in sorted(algebra.integrals.items())},
        "normal": [{"lambda": format_rational(line.weight), "beta": str(line.euler)} for line in comp.normal],
    }


def data_to_dict(data: FixedPointData) -> Dict[str, Any]:
    document: Dict[str, Any] = {"schema_version": SCHEMA_VERSION, "name": data.name, "dim": data.dim}
    if data.manifold:
        document["manifold"] = data.manifold
    document["components"] = [_component_to_dict(comp) for comp in data.components]
    return document


def save_data(data: FixedPointData) -> str:
    return json.dumps(data_to_dict(data), indent=2) + "\n"


def _require(mapping: Dict[str, Any], key: str, kind, path: str, owner: str):
    if key not in mapping:
        raise SchemaError(f"{path}.{key}" if path else key, f"missing key {key!r} in {owner}")
    value = mapping[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        expected = kind.__name__ if isinstance(kind, type) else "/".join(k.__name__ for k in kind)
        raise SchemaError(f"{path}.{key}" if path else key, f"expected {expected}, got {type(value).__name__}")
    return value


def _rational_field(value: Any, path: str) -> Rational:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise SchemaError(path, f"rationals are written as strings like \"3/2\", got {value!r}")
    try:
        return to_rational(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(path, str(exc)) from exc


def _class_field(text: Any, algebra: TruncatedCohomology, path: str) -> ClassExpr:
    if not isinstance(text, str):
        raise SchemaError(path, f"classes are written as expression strings, got {text!r}")
    try:
        return parse_class(text, algebra, RATIONAL)
    except ExpressionParseError as exc:
        raise SchemaError(path, str(exc)) from exc


def _component_from_dict(raw: Any, path: str) -> ComponentModel:
    if not isinstance(raw, dict):
        raise SchemaError(path, "component must be an object")
    name = _require(raw, "name", str, path, "component")
    owner = f"component {name!r}"
    dim = _require(raw, "dim", int, path, owner)
    raw_generators = _require(raw, "generators", list, path, owner)
    raw_chern = _require(raw, "tangent_chern", list, path, owner)
    raw_integrals = _require(raw, "integrals", dict, path, owner)
    raw_normal = _require(raw, "normal", list, path, owner)

    generators = []
    for k, gen in enumerate(raw_generators):
        gen_path = f"{path}.generators[{k}]"
        if not isinstance(gen, dict):
            raise SchemaError(gen_path, "generator must be an object")
        power = gen.get("power")
        if power is not None and (isinstance(power, bool) or not isinstance(power, int)):
            raise SchemaError(f"{gen_path}.power", f"expected int or null, got {power!r}")
        degree = gen.get("degree", 1)
        if isinstance(degree, bool) or not isinstance(degree, int):
            raise SchemaError(f"{gen_path}.degree", f"expected int, got {degree!r}")
        generators.append(Generator(_require(gen, "name", str, gen_path, "generator"), degree, power))
    try:
        algebra = TruncatedCohomology(name, dim, generators, {})
    except ValueError as exc:
        raise SchemaError(f"{path}.generators", str(exc)) from exc

    for key, value in raw_integrals.items():
        key_path = f"{path}.integrals[{key!r}]"
        try:
            exps = algebra.parse_monomial_key(key)
        except ValueError as exc:
            raise SchemaError(key_path, str(exc)) from exc
        if algebra.monomial_degree(exps) != dim:
            raise SchemaError(key_path, f"monomial {key!r} is not of top degree {dim}")
        algebra.integrals[exps] = _rational_field(value, key_path)

    tangent = tuple(_class_field(text, algebra, f"{path}.tangent_chern[{k}]") for k, text in enumerate(raw_chern))
    normal = []
    for j, line in enumerate(raw_normal):
        line_path = f"{path}.normal[{j}]"
        if not isinstance(line, dict):
            raise SchemaError(line_path, "normal line must be an object")
        weight = _rational_field(_require(line, "lambda", (str, int), line_path, "normal line"), f"{line_path}.lambda")
        beta = _class_field(line.get("beta", "0"), algebra, f"{line_path}.beta")
        normal.append(NormalLine(weight, beta))
    return ComponentModel(name, algebra, tangent, tuple(normal))


def data_from_dict(document: Any, default_name: str = "data") -> FixedPointData:
    if not isinstance(document, dict):
        raise SchemaError("", "document must be a JSON object")
    version = document.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SchemaError("schema_version", f"unsupported schema version {version!r}")
    name = document.get("name", default_name)
    if not isinstance(name, str):
        raise SchemaError("name", f"expected str, got {type(name).__name__}")
    dim = _require(document, "dim", int, "", "document")
    raw_components = _require(document, "components", list, "", "document")
    manifold = document.get("manifold")
    components = tuple(_component_from_dict(raw, f"components[{k}]") for k, raw in enumerate(raw_components))
    data = FixedPointData(name, dim, components, manifold)
    validate_data(data)
    return data


def load_data(text: str, source: str = "data") -> FixedPointData:
    """Parse and validate a fixed-point document"""
    try:
        document = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"line {exc.lineno}, column {exc.colno}", f"invalid JSON: {exc.msg}") from exc
    data = data_from_dict(document, default_name=Path(source).stem)
    logger.debug("loaded %s from %s", data.name, source)
    return data


def load_file(path: Union[str, Path]) -> FixedPointData:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise SchemaError(str(path), "file is not valid UTF-8") from exc
    return load_data(text, source=str(path))


def write_file(data: FixedPointData, path: Union[str, Path]) -> None:
    Path(path).write_text(save_data(data), encoding="utf-8")
