# vanishing/override.py
from poly.polynomial import Polynomial
from vanishing import register_strategy
from vanishing.strategy import USER_OVERRIDE, VanishingOrderResult, VanishingOrderStrategy


@register_strategy(USER_OVERRIDE)
class OverrideStrategy(VanishingOrderStrategy):
    """
    Reports a caller-supplied o(S) unchanged.
    """

    def __init__(self, value: int):
        if value < 0:
            raise ValueError(f"Vanishing order override must be nonnegative, got {value}.")
        self.value = int(value)

    def compute(self, p: Polynomial) -> VanishingOrderResult:
        return VanishingOrderResult(self.value, USER_OVERRIDE, [])
