from __future__ import annotations

import numpy as np

from .errors import InvalidParameterError


def stream(seed: int, stream_id: int = 0) -> np.random.Generator:
    """
    Independent random stream for (seed, stream_id).

    Philox is counter-based, so the stream for a given id does not depend on
    how many other streams were created or in which order.
    """
    if seed < 0 or stream_id < 0:
        raise InvalidParameterError(f"seed and stream_id must be >= 0 (got {seed}, {stream_id})")
    seq = np.random.SeedSequence(entropy=int(seed), spawn_key=(int(stream_id),))
    return np.random.Generator(np.random.Philox(seq))
