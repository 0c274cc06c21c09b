"""Fitted-model container and its versioned on-disk document.

Models serialize to a key-ordered JSON text document (extension
``.uqm``) so identical fits produce byte-identical files and golden
files stay reviewable. Floats survive the round trip bit-exactly via
shortest-repr encoding.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from uqkit.core.data import DatasetFingerprint
from uqkit.errors import CorruptPayload, SchemaVersionMismatch, UqIoError

SCHEMA_VERSION = 1
_FORMAT = "uqkit-model"


def canonical_json(obj) -> str:
    """Key-ordered JSON text with a trailing newline."""
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


@dataclass(frozen=True)
class FittedEstimator:
    """Immutable trained state for any registered algorithm.

    ``state`` is the algorithm-specific payload and holds only JSON
    types, so two models are equal exactly when their serializations
    are. ``preprocess`` records the CLI's optional dataset-level
    standardization so a saved model reproduces it at predict time.
    """

    algorithm_id: str
    config: dict
    state: dict
    schema_version: int
    trained_on: DatasetFingerprint
    preprocess: dict | None = None

    def to_document(self) -> dict:
        return {
            "format": _FORMAT,
            "schema_version": self.schema_version,
            "algorithm_id": self.algorithm_id,
            "config": self.config,
            "state": self.state,
            "trained_on": self.trained_on.to_payload(),
            "preprocess": self.preprocess,
        }

    @classmethod
    def from_document(cls, doc: dict) -> "FittedEstimator":
        if not isinstance(doc, dict) or doc.get("format") != _FORMAT:
            raise CorruptPayload("not a uqkit model document")
        version = doc.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaVersionMismatch(
                f"model file has schema_version {version!r}; this build reads {SCHEMA_VERSION}")
        try:
            return cls(
                algorithm_id=doc["algorithm_id"],
                config=doc["config"],
                state=doc["state"],
                schema_version=version,
                trained_on=DatasetFingerprint.from_payload(doc["trained_on"]),
                preprocess=doc.get("preprocess"),
            )
        except KeyError as exc:
            raise CorruptPayload(f"model document missing field {exc}") from None


def dumps_model(model: FittedEstimator) -> str:
    return canonical_json(model.to_document())


def save(model: FittedEstimator, path) -> None:
    """Write ``model`` to ``path`` as the versioned ``.uqm`` document."""
    try:
        Path(path).write_text(dumps_model(model), encoding="utf-8")
    except OSError as exc:
        raise UqIoError(f"cannot write model file {path}: {exc}") from exc


def load(path) -> FittedEstimator:
    """Read a model written by :func:`save`."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UqIoError(f"cannot read model file {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CorruptPayload(f"model file {path} does not parse: {exc}") from None
    return FittedEstimator.from_document(doc)
