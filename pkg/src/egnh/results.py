"""Structured result documents and their JSON encoding.

Floats are written with 17 significant digits so every double survives a
round trip; non-finite values use the ``Infinity``/``NaN`` literals that
:func:`json.loads` accepts.
"""

import dataclasses
import enum
import hashlib
import json
import math
from dataclasses import dataclass

import numpy as np

SCHEMA_VERSION = "1.0"


def _float_text(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "Infinity" if v > 0 else "-Infinity"
    text = format(v, ".17g")
    if not any(c in text for c in ".en"):
        text += ".0"
    return text


def to_plain(obj):
    """Convert numpy types, enums, tuples and dataclasses to JSON-ready values."""
    if isinstance(obj, enum.Enum):
        return to_plain(obj.value)
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, str) or obj is None:
        return obj
    if isinstance(obj, np.ndarray):
        return [to_plain(v) for v in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return to_plain({f.name: getattr(obj, f.name) for f in dataclasses.fields(obj)})
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Compact single-line JSON with 17-significant-digit floats."""
    obj = to_plain(obj)
    parts = []

    def emit(v):
        if isinstance(v, bool) or v is None:
            parts.append(json.dumps(v))
        elif isinstance(v, int):
            parts.append(str(v))
        elif isinstance(v, float):
            parts.append(_float_text(v))
        elif isinstance(v, str):
            parts.append(json.dumps(v, ensure_ascii=False))
        elif isinstance(v, list):
            parts.append("[")
            for i, item in enumerate(v):
                if i:
                    parts.append(",")
                emit(item)
            parts.append("]")
        else:
            parts.append("{")
            for i, (k, item) in enumerate(v.items()):
                if i:
                    parts.append(",")
                parts.append(json.dumps(k, ensure_ascii=False))
                parts.append(":")
                emit(item)
            parts.append("}")

    emit(obj)
    return "".join(parts)


def digest(*items) -> str:
    """SHA-256 of the canonical encoding of ``items``."""
    return hashlib.sha256(dumps(list(items)).encode("utf-8")).hexdigest()


@dataclass
class ResultDocument:
    command: str
    payload_kind: str
    payload: dict
    inputs_digest: str
    schema_version: str = SCHEMA_VERSION

    def to_json(self) -> str:
        return dumps(
            {
                "schema_version": self.schema_version,
                "command": self.command,
                "inputs_digest": self.inputs_digest,
                "payload_kind": self.payload_kind,
                "payload": self.payload,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "ResultDocument":
        raw = json.loads(text)
        return cls(
            command=raw["command"],
            payload_kind=raw["payload_kind"],
            payload=raw["payload"],
            inputs_digest=raw["inputs_digest"],
            schema_version=raw["schema_version"],
        )

    def __eq__(self, other):
        # compare encodings so that NaN payload entries compare equal
        if not isinstance(other, ResultDocument):
            return NotImplemented
        return self.to_json() == other.to_json()


# --------------------------------------------------------------------------
# payload builders


def fit_payload(fit) -> dict:
    return to_plain(
        {
            "model": fit.model,
            "method": fit.method,
            "param_names": list(fit.param_names),
            "estimates": fit.estimates,
            "loglik": fit.loglik,
            "score_at_hat": fit.score_at_hat,
            "std_errors": fit.std_errors,
            "cov": fit.cov,
            "ci95": fit.ci95,
            "converged": fit.converged,
            "iterations": fit.iterations,
            "n": fit.n,
            "k": fit.k,
            "at_bound": list(fit.at_bound),
            "start_index": fit.start_index,
        }
    )


def sim_payload(result) -> dict:
    d = result.design
    return to_plain(
        {
            "design": {
                "theta0": d.theta0.as_array(),
                "sizes": list(d.sizes),
                "replications": d.replications,
                "seed": d.seed,
                "method": d.method,
                "b_max": d.b_max,
            },
            "rows": [dataclasses.asdict(r) for r in result.rows],
        }
    )
