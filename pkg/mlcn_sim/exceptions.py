from typing import Optional


class ArgumentError(ValueError):
    pass


class UndefinedMetric(Exception):
    pass


class GenerationError(Exception):
    """A random construction exhausted its rejection budget.

    Args:
        message (str):
            What failed.
        gate (str):
            Name of the acceptance gate that rejected the last candidate.
        replicate (int):
            The replicate being built, if known.
        k (int):
            The static-sweep K value being built, if known.
    """

    def __init__(
        self,
        message: str,
        gate: str,
        *,
        replicate: Optional[int] = None,
        k: Optional[int] = None,
    ):
        super().__init__(message)
        self.gate = gate
        self.replicate = replicate
        self.k = k

    def __reduce__(self):
        return _rebuild_generation_error, (self.args[0], self.gate, self.replicate, self.k)

    def __str__(self) -> str:
        where = ""
        if self.replicate is not None:
            where += f" (replicate {self.replicate}"
            where += f", K={self.k})" if self.k is not None else ")"
        return f"{self.args[0]} [gate: {self.gate}]{where}"


class EmissionError(Exception):
    def __init__(self, message: str, path: str):
        super().__init__(message)
        self.path = path

    def __reduce__(self):
        return EmissionError, (self.args[0], self.path)

    def __str__(self) -> str:
        return f"{self.args[0]}: {self.path}"


def _rebuild_generation_error(message, gate, replicate, k):
    return GenerationError(message, gate, replicate=replicate, k=k)
