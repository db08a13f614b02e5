"""Seedable, splittable random streams.

Every stochastic procedure in the package draws uniforms from an
:class:`RngStream` and transforms them by inverse CDF.  A stream is
identified by a 64-bit ``seed`` plus a path of 64-bit indices whose first
entry is the ``stream_id``; the pair is hashed into a Philox counter-based
generator key, so identical identities replay identical sequences on every
platform and distinct identities give statistically independent output.
"""

from __future__ import annotations

import numpy as np
from numpy.random import Generator, Philox, SeedSequence

from .errors import InvalidInputError

_UINT64_MAX = 2**64 - 1


class RngStream:
    """Deterministic uniform source, splittable into independent sub-streams.

    Parameters
    ----------
    seed : int
        Master seed, 0 <= seed < 2**64.
    stream_id : int
        Index of this stream under the seed, 0 <= stream_id < 2**64.
        Streams with distinct ids never share output.

    A stream is single-owner: callers consume it sequentially.  For parallel
    fan-out, derive one child per work item with :meth:`substream` before
    dispatch; children are independent of the parent and of each other.
    Pickling transfers the identity only, so an unpickled stream restarts
    from the beginning of its sequence.
    """

    __slots__ = ("seed", "path", "_gen")

    def __init__(self, seed: int, stream_id: int = 0, _path: tuple[int, ...] | None = None):
        seed = int(seed)
        if not 0 <= seed <= _UINT64_MAX:
            raise InvalidInputError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if _path is None:
            stream_id = int(stream_id)
            if not 0 <= stream_id <= _UINT64_MAX:
                raise InvalidInputError(f"stream_id must be a 64-bit unsigned integer, got {stream_id}")
            _path = (stream_id,)
        self.seed = seed
        self.path = _path
        self._gen: Generator | None = None

    @property
    def stream_id(self) -> int:
        return self.path[0]

    def substream(self, index: int) -> "RngStream":
        """Child stream for work item ``index``; independent of the parent."""
        index = int(index)
        if index < 0:
            raise InvalidInputError("substream index must be non-negative")
        return RngStream(self.seed, _path=self.path + (index,))

    def _generator(self) -> Generator:
        if self._gen is None:
            ss = SeedSequence(entropy=self.seed, spawn_key=self.path)
            self._gen = Generator(Philox(ss))
        return self._gen

    def uniform(self, size: int | None = None):
        """Uniform draws on (0, 1); scalar when ``size`` is None.

        The zero endpoint is floored away so inverse-CDF transforms stay
        finite.
        """
        u = self._generator().random(size)
        return np.maximum(u, np.finfo(float).tiny)

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, path={self.path})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, RngStream):
            return NotImplemented
        return self.seed == other.seed and self.path == other.path

    def __hash__(self) -> int:
        return hash((self.seed, self.path))

    def __getstate__(self):
        return (self.seed, self.path)

    def __setstate__(self, state):
        self.seed, self.path = state
        self._gen = None
