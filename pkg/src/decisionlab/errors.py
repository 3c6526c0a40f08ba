"""Exception hierarchy shared by all decisionlab modules.

Every domain failure derives from :class:`DecisionLabError` so callers
(CLI, HTTP service) can map the whole family to exit codes or HTTP
statuses in one place.  ``code`` is the stable machine-readable name.
"""


class DecisionLabError(Exception):
    """Base class for all domain errors raised by this package."""

    @property
    def code(self) -> str:
        return type(self).__name__


# --- history store ---------------------------------------------------------

class UnknownIndustry(DecisionLabError):
    """Referenced industry id is not registered in the store."""


class UnknownIndex(DecisionLabError):
    """Referenced index id is not registered in the store."""


class NonFiniteValue(DecisionLabError):
    """A value that must be finite is NaN or infinite."""


class BadRuleColumn(DecisionLabError):
    """A conversion rule points at a column the table does not have."""


class UnparseableTime(DecisionLabError):
    """A time cell could not be parsed as a year or year:period."""


# --- leveling / shared numeric ---------------------------------------------

class DimensionMismatch(DecisionLabError):
    """Operands have incompatible shapes or lengths."""


class EmptyVector(DecisionLabError):
    """An operation requires a non-empty vector."""


# --- markov chain -----------------------------------------------------------

class SequenceTooShort(DecisionLabError):
    """Label sequence too short to count any transition."""


class LabelOutOfRange(DecisionLabError):
    """A state label falls outside [0, n)."""


# --- linear gaussian ---------------------------------------------------------

class SeriesTooShort(DecisionLabError):
    """Series has too few points for the requested fit or evaluation."""


class DegenerateVariance(DecisionLabError):
    """All predecessor values identical; the slope is undefined."""


class ZeroSigma(DecisionLabError):
    """Likelihood evaluation requires a strictly positive noise scale."""


# --- correlation --------------------------------------------------------------

class ZeroVariance(DecisionLabError):
    """A margin is constant, so the coefficient is undefined."""


class TooFewGroups(DecisionLabError):
    """Correlation ratio needs at least two non-empty groups."""


class EmptySample(DecisionLabError):
    """No data supplied."""


class DegenerateControl(DecisionLabError):
    """Control variable is perfectly correlated with a margin."""


# --- mdp ----------------------------------------------------------------------

class NonConvergence(DecisionLabError):
    """Value iteration hit its iteration cap; model is likely malformed."""


# --- geometry -------------------------------------------------------------------

class ParameterOutOfRange(DecisionLabError):
    """Curve parameter outside the valid interval."""


# --- plotting --------------------------------------------------------------------

class ZeroStd(DecisionLabError):
    """Density plot requires a strictly positive standard deviation."""
