class NotCoprimeError(ValueError):
    """An ideal or element shares a prime factor with a modulus it must avoid."""


class UnitCompatibilityError(ValueError):
    """Finite type and infinity type disagree on the units of O_K."""


class ExactBackendError(ValueError):
    """A value cannot be represented in Z[omega]; use a residue system instead."""


class HypothesisError(ValueError):
    """A hypothesis of the companion construction fails.

    ``hypothesis`` names the failing condition (``"ordinarity"``,
    ``"class_number"``, ``"level"``, ``"parity"``, ``"disc"``, ...).
    """

    def __init__(self, hypothesis, message):
        super().__init__(f"{hypothesis}: {message}")
        self.hypothesis = hypothesis


class AnchorConflictError(ValueError):
    """No single twist exponent satisfies every prime dividing M."""

    def __init__(self, conflict):
        super().__init__(
            f"class representative {conflict.rep} (order {conflict.order}): "
            f"prime {conflict.p} wants d={conflict.d_first}, "
            f"prime {conflict.q} wants d={conflict.d_second}"
        )
        self.conflict = conflict
        self.attempts = ()  # conjugate-prime choices tried, when searched
