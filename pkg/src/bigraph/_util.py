from __future__ import annotations

import os
import tempfile

import numpy as np


def as_rng(rng=None) -> np.random.Generator:
    """Coerce a seed, ``SeedSequence`` or ``Generator`` into a ``Generator``.

    Objects that already quack like a generator (``random``/``integers``) pass
    through untouched.
    """
    if isinstance(rng, np.random.Generator):
        return rng
    if rng is not None and hasattr(rng, "random") and hasattr(rng, "integers"):
        return rng
    return np.random.default_rng(rng)


def child_seeds(seed, count: int) -> list[np.random.SeedSequence]:
    """Deterministic independent child seed sequences for ``count`` jobs."""
    if isinstance(seed, np.random.SeedSequence):
        ss = seed
    elif isinstance(seed, np.random.Generator):
        ss = np.random.SeedSequence(int(seed.integers(2**63)))
    else:
        ss = np.random.SeedSequence(seed)
    return ss.spawn(count)


def atomic_write_text(path, text: str) -> None:
    """Write ``text`` to ``path`` via a temp file in the same directory and a rename."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
