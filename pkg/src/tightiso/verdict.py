from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Verdict:
    """Boolean outcome carrying a witness (counterexample or certificate)."""

    ok: bool
    witness: Any = None
    detail: str = ""

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class Unknown:
    """A bounded search ran out of depth without settling the question."""

    depth: int
    detail: str = field(default="", compare=False)

    def __bool__(self):
        raise TypeError("Unknown verdict has no truth value; test `is Unknown` first")


def is_unknown(value):
    return isinstance(value, Unknown)
