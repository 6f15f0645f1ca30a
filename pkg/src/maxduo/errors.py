"""Exception hierarchy for the maxduo package."""


class MaxDuoError(Exception):
    """Base class for every error raised by maxduo."""


class LengthMismatch(MaxDuoError):
    pass


class NotPermutation(MaxDuoError):
    def __init__(self, symbol, count_a: int, count_b: int):
        super().__init__(
            f"symbol {symbol!r} occurs {count_a} times in A but {count_b} times in B"
        )
        self.symbol = symbol
        self.count_a = count_a
        self.count_b = count_b


class PositionOutOfRange(MaxDuoError):
    pass


class InvalidMapping(MaxDuoError):
    pass


class MixedSides(MaxDuoError):
    pass


class ConflictDetected(MaxDuoError):
    pass


class InstanceTooLarge(MaxDuoError):
    pass


class BudgetExceeded(MaxDuoError):
    pass


class MalformedFamilyFile(MaxDuoError):
    pass


class WitnessInvalid(MaxDuoError):
    """A paper-mode DP witness reuses B positions.

    ``conflicts`` lists ``(b_position, a_positions)`` for every B position
    claimed by more than one A position.
    """

    def __init__(self, conflicts, mapping_pairs=()):
        desc = ", ".join(f"B{j} <- A{sorted(src)}" for j, src in conflicts)
        super().__init__(f"witness reuses B positions: {desc}")
        self.conflicts = list(conflicts)
        self.mapping_pairs = list(mapping_pairs)

    @property
    def reused_b_positions(self) -> list[int]:
        return [j for j, _ in self.conflicts]


class InternalImbalance(MaxDuoError):
    pass


class SpecInfeasible(MaxDuoError):
    pass


class ParseError(MaxDuoError):
    pass
