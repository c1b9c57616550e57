from typing import Iterable, List, Protocol, Tuple

from ._types import RankKey


class RankingProt(Protocol):
    def items(self) -> Iterable[Tuple[RankKey, float]]: ...

    def __len__(self) -> int: ...

    def __getitem__(self, key) -> float: ...

    def top(self, k: int) -> List: ...
