"""Enumeration caps.

Every brute-force routine checks its input against a cap before enumerating.
Defaults can be changed through environment variables (read once at import)
or temporarily with :func:`override`, which is context-local and therefore
safe to use from threads.
"""

from __future__ import annotations

import contextlib
import dataclasses
import os
from contextvars import ContextVar
from typing import Iterator

from .errors import CapacityError


@dataclasses.dataclass(frozen=True)
class Caps:
    models: int = 24  # atoms in an explicit 2^n model enumeration
    positive_clauses: int = 16  # atoms for GCWA positive-clause enumeration
    defaults: int = 24  # |D| for extension search
    stable: int = 22  # atoms for stable-model candidate enumeration
    revision: int = 16  # |K| for maximal consistent subset search
    oracle: int = 20  # vertices / QBF variables for the brute-force oracles


_ENV = {
    "models": "PKRKIT_MODEL_CAP",
    "positive_clauses": "PKRKIT_CLAUSE_CAP",
    "defaults": "PKRKIT_SEARCH_CAP",
    "stable": "PKRKIT_STABLE_CAP",
    "revision": "PKRKIT_REVISION_CAP",
    "oracle": "PKRKIT_ORACLE_CAP",
}


def _from_env() -> Caps:
    values = {}
    for field, var in _ENV.items():
        raw = os.environ.get(var)
        if raw is not None:
            values[field] = int(raw)
    return Caps(**values)


_current: ContextVar[Caps] = ContextVar("pkrkit_caps", default=_from_env())


def current() -> Caps:
    return _current.get()


@contextlib.contextmanager
def override(**changes: int) -> Iterator[Caps]:
    caps = dataclasses.replace(current(), **changes)
    token = _current.set(caps)
    try:
        yield caps
    finally:
        _current.reset(token)


def check(cap: str, requested: int) -> None:
    limit = getattr(current(), cap)
    if requested > limit:
        raise CapacityError(cap, limit, requested)
