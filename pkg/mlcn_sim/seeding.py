import hashlib
import random
from typing import Union


def derive_seed(master: int, replicate: int, k: int, tag: str) -> int:
    """Derive a child seed from the master seed.

    Every random stream of a run is keyed by (master, replicate, K, layer tag),
    so any single build can be reproduced without replaying the others.
    """
    digest = hashlib.sha256(f"{master}:{replicate}:{k}:{tag}".encode("ascii")).digest()
    return int.from_bytes(digest[:8], "big")


def stream(master: int, replicate: int, k: int, tag: Union[str, int]) -> random.Random:
    """Returns a seeded random stream for one layer of one build"""
    return random.Random(derive_seed(master, replicate, k, str(tag)))
