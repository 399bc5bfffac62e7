"""Exception hierarchy shared by all pickforge modules."""


class PickforgeError(Exception):
    """Base class for every error raised by pickforge."""


class DomainError(PickforgeError, ValueError):
    """Argument outside the domain where the quantity is defined."""


class PoleError(DomainError):
    """Evaluation requested exactly at a pole of a kernel."""


class BracketError(PickforgeError, ValueError):
    """Target value is not enclosed by the image of the bracket."""


class NonConvergence(PickforgeError, RuntimeError):
    """An adaptive scheme ran out of budget before meeting its tolerance."""


class DivergentTransform(PickforgeError, ValueError):
    """The requested Laplace transform does not converge for this argument."""


class ExtrapolationUnstable(PickforgeError, RuntimeError):
    """Successive extrapolated estimates disagree beyond tolerance."""


class IntegrabilityError(PickforgeError, ValueError):
    """A measure violates the integrability condition of its class."""


class DivergentMoment(PickforgeError, ValueError):
    """The negative moment E[xi_t^-p] is infinite for these arguments."""


class RegimePreconditionFailed(PickforgeError, ValueError):
    """A temporal-monotonicity regime was requested outside its hypotheses."""

    def __init__(self, condition, message=None):
        self.condition = condition
        super().__init__(message or f"precondition failed: {condition}")


class UnknownFunction(PickforgeError, KeyError):
    """Catalog lookup failed."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown function"
