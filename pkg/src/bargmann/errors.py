"""Exception hierarchy shared by the numerical modules."""


class BargmannError(Exception):
    """Base class for numerical failures in the pipeline."""


class PoleError(BargmannError):
    """Evaluation requested exactly at a pole."""


class BoundStateError(BargmannError):
    """A Jost-function parameter corresponds to a bound state (a_j < 0)."""


class InvariantError(BargmannError):
    """A structural invariant (conjugate closure, monic leading term, ...) failed."""


class InterpolationError(BargmannError):
    """Sampled evaluator is not a polynomial of the declared degree."""


class SingularSystemError(BargmannError):
    """Marchenko linear system is singular."""


class ConvergenceError(BargmannError):
    """Step refinement did not converge to the requested tolerance."""


class DecayError(BargmannError):
    """Potential has not decayed at the matching radius."""
