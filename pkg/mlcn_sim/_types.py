from typing import Dict, Optional, Tuple, Union


Vertex = int
Edge = Tuple[int, int]
RankKey = Union[Vertex, Edge]
MetricValue = Optional[Union[int, float]]
Histogram = Dict[int, int]
