from typing import Iterable


class NeumaierSum:
    """Running compensated sum (Neumaier's variant of Kahan summation).

    Unlike plain Kahan summation the carry survives when an incoming term is
    larger than the running sum, so ``[1e16, 1.0, -1e16]`` sums to ``1.0``.
    """

    def __init__(self):
        self.sum = 0.0
        self.carry = 0.0

    def add(self, value: float) -> None:
        total = self.sum + value
        if abs(self.sum) >= abs(value):
            self.carry += (self.sum - total) + value
        else:
            self.carry += (value - total) + self.sum
        self.sum = total

    def __iadd__(self, value: float) -> "NeumaierSum":
        self.add(value)
        return self

    @property
    def value(self) -> float:
        return self.sum + self.carry


def compensated_sum(terms: Iterable[float]) -> float:
    """Sum terms in the given order with O(eps) * sum|terms| error."""
    acc = NeumaierSum()
    for term in terms:
        acc.add(float(term))
    return acc.value
