"""JSON reports emitted by the command line tool.

Complex numbers are encoded as ``[re, im]`` and matrices as row-major
nested lists, so every report is plain JSON.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np


def encode(value: Any) -> Any:
    """Convert numpy / complex values into JSON-native structures."""
    if isinstance(value, np.ndarray):
        if np.iscomplexobj(value):
            return encode(value.tolist())
        return value.tolist()
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, (np.floating,)):
        return float(value)
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, dict):
        return {str(k): encode(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode(v) for v in value]
    return value


def decode_complex_matrix(value: Any) -> np.ndarray:
    """Inverse of :func:`encode` for a nested list of ``[re, im]`` pairs."""
    arr = np.asarray(value, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("expected [re, im] pairs in the innermost dimension")
    return arr[..., 0] + 1j * arr[..., 1]


@dataclass
class Report:
    command: str
    N: int
    metric: Any = None
    results: dict[str, Any] = field(default_factory=dict)
    defects: dict[str, dict[str, float]] = field(default_factory=dict)
    passes: dict[str, bool] = field(default_factory=dict)
    tolerances: dict[str, float] = field(default_factory=dict)

    def add_result(self, name: str, value: Any) -> None:
        self.results[name] = encode(value)

    def check_defect(self, name: str, value: float, tol: float) -> bool:
        value = float(value)
        ok = bool(value <= tol)
        self.defects[name] = {"value": value, "tol": float(tol)}
        self.passes[name] = ok
        return ok

    def check(self, name: str, ok: bool) -> bool:
        self.passes[name] = bool(ok)
        return bool(ok)

    @property
    def ok(self) -> bool:
        return all(self.passes.values())

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["metric"] = encode(self.metric)
        d["ok"] = self.ok
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> Report:
        d = json.loads(text)
        d.pop("ok", None)
        return cls(**d)

    def table(self) -> str:
        lines = [f"{self.command}  N={self.N}"]
        for name, val in self.results.items():
            if isinstance(val, (int, float, str, bool)):
                lines.append(f"  {name:<32} {val}")
            elif isinstance(val, list) and len(val) == 2 and all(
                isinstance(v, float) for v in val
            ):
                lines.append(f"  {name:<32} {val[0]:+.12g} {val[1]:+.12g}i")
        for name, ok in self.passes.items():
            extra = ""
            if name in self.defects:
                dfc = self.defects[name]
                extra = f"  {dfc['value']:.3e} <= {dfc['tol']:.1e}"
            lines.append(f"  [{'PASS' if ok else 'FAIL'}] {name}{extra}")
        return "\n".join(lines)
