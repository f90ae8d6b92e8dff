"""Domain errors.  Each carries a short machine-readable kind."""

from __future__ import annotations

import json


class QuadTorsError(Exception):
    kind = "DomainError"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.kind)
        self.details = details

    def to_json(self) -> str:
        payload = {"error": self.kind, "message": str(self)}
        payload.update({k: v for k, v in self.details.items()})
        return json.dumps(payload, separators=(",", ":"), default=str)


def _make(name: str, base=QuadTorsError):
    return type(name, (base,), {"kind": name})


NotSquarefree = _make("NotSquarefree")
MTooSmall = _make("mTooSmall")
FieldMismatch = _make("FieldMismatch")
Ramified = _make("Ramified")
NotSplit = _make("NotSplit")
NotCoprime = _make("NotCoprime")
DiscriminantTooLarge = _make("DiscriminantTooLarge")
CannotFactor = _make("CannotFactor")
GeneratorSearchFailed = _make("GeneratorSearchFailed")
NotSaturated = _make("NotSaturated")
NonCyclicPPart = _make("NonCyclicPPart")
EmptyPool = _make("EmptyPool")
PrecisionExhausted = _make("PrecisionExhausted")
InvalidArgument = _make("InvalidArgument")
