"""JSON system definitions: loading, schema validation and serialization."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from ..errors import SchemaError
from ..exactnum import Backend, backend_from_name, format_rational, parse_rational
from .atomic import AtomicMeasure
from .discretize import discretize_weight
from .system import GeneratorChain, NikishinSystem, validate_chain

__all__ = ["SystemFile", "load_schema", "load_system", "parse_system", "system_to_json",
           "measure_to_json"]


@dataclass
class SystemFile:
    """A parsed definition: the chain plus the optional pair layout."""

    system: NikishinSystem
    name: str = ""
    m1: int | None = None
    m2: int | None = None
    second: NikishinSystem | None = None

    @property
    def backend(self) -> Backend:
        return self.system.backend


def load_schema() -> dict:
    text = resources.files("nikishin.data").joinpath("system.schema.json").read_text()
    return json.loads(text)


def _scalar(text, backend: Backend):
    if backend.exact:
        return parse_rational(text)
    if "/" in text:
        return backend.convert(parse_rational(text))
    return backend.ctx.mpf(text.strip())


def _measure(spec: dict, backend: Backend) -> AtomicMeasure:
    if "preset" in spec:
        if backend.exact:
            raise SchemaError(f"preset {spec['preset']!r} requires the bigfloat backend")
        return discretize_weight(spec["preset"], spec["N"], backend=backend)
    atoms = [(_scalar(x, backend), _scalar(w, backend)) for x, w in spec["atoms"]]
    return AtomicMeasure(atoms, sign=spec.get("sign"), backend=backend)


def _touch(values, backend):
    return [None if t is None else _scalar(t, backend) for t in values or []]


def parse_system(doc: dict, backend: Backend | None = None, min_atoms: int = 2) -> SystemFile:
    """Validate ``doc`` against the schema and build the system.

    ``backend`` overrides the file's backend choice.
    """
    try:
        jsonschema.validate(doc, load_schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path)
        raise SchemaError(f"schema violation at '{path}': {exc.message}") from None
    if backend is None:
        backend = backend_from_name(doc.get("backend", "rational"), doc.get("precision_bits"))
    start = doc.get("start", 0)
    measures = [_measure(m, backend) for m in doc["measures"]]
    chain = GeneratorChain(measures, _touch(doc.get("touch_points"), backend), start)
    system = validate_chain(chain, backend, min_atoms=min_atoms)
    pair = doc.get("pair", {})
    second = None
    if "second_chain" in pair:
        tail = [_measure(m, backend) for m in pair["second_chain"]]
        tps = _touch(pair.get("second_touch_points"), backend)
        chain2 = GeneratorChain([measures[0]] + tail, tps, start)
        second = validate_chain(chain2, backend, min_atoms=min_atoms)
    return SystemFile(system, doc.get("name", ""), pair.get("m1"), pair.get("m2"), second)


def load_system(path, backend: Backend | None = None, min_atoms: int = 2) -> SystemFile:
    path = Path(path)
    try:
        doc = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from None
    return parse_system(doc, backend, min_atoms)


def measure_to_json(s: AtomicMeasure) -> dict:
    return {"atoms": [[format_rational(x), format_rational(w)] for x, w in s.atoms],
            "sign": s.sign}


def system_to_json(system: NikishinSystem, name: str = "", m1=None, m2=None) -> dict:
    b = system.backend
    doc = {"backend": b.name}
    if name:
        doc["name"] = name
    if not b.exact:
        doc["precision_bits"] = b.precision
    doc["start"] = system.start
    doc["measures"] = [measure_to_json(s) for s in system.chain.measures]
    doc["touch_points"] = [None if t is None else format_rational(t)
                           for t in system.chain.touch_points]
    if m1 is not None or m2 is not None:
        doc["pair"] = {k: v for k, v in (("m1", m1), ("m2", m2)) if v is not None}
    return doc


