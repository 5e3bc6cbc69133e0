"""Exception types shared across the package.

Everything raised for a domain reason (as opposed to caller misuse, which
gets ValueError/TypeError) derives from SwitchRiskError so the CLI can map
it to a typed error report and exit code 1.
"""

from __future__ import annotations


class SwitchRiskError(Exception):
    """Base class for domain errors raised by this package."""


class UndefinedMeasure(SwitchRiskError):
    """An effect measure has a zero denominator for the given risk pair."""

    def __init__(self, kind, reason: str):
        self.kind = kind
        self.reason = reason
        name = getattr(kind, "value", kind)
        super().__init__(f"{name} is undefined: {reason}")


class InvalidPrediction(SwitchRiskError):
    """An effect function mapped a baseline risk outside [0, 1]."""

    def __init__(self, kind, raw_value: float):
        self.kind = kind
        self.raw_value = raw_value
        name = getattr(kind, "value", kind)
        super().__init__(f"{name} effect function left [0, 1]: predicted {raw_value!r}")


class WeightError(SwitchRiskError):
    """Stratum weights are negative or do not sum to one."""


class UnknownModifier(SwitchRiskError):
    """A prediction request named a modifier level absent from its table."""

    def __init__(self, key: str, known: tuple[str, ...] = ()):
        self.key = key
        self.known = tuple(known)
        detail = f"; known levels: {', '.join(self.known)}" if self.known else ""
        super().__init__(f"no modifier level named {key!r}{detail}")


class IncoherentMechanism(SwitchRiskError):
    """Two switch types assign treatment response in opposite directions."""

    def __init__(self, first, second):
        self.first = first
        self.second = second
        a = getattr(first, "value", first)
        b = getattr(second, "value", second)
        super().__init__(
            f"switch types {a} and {b} cannot coexist: one reads the treated arm "
            f"off the control arm, the other reads the control arm off the treated arm"
        )


class NotMonotone(SwitchRiskError):
    """An operation that needs a single-switch mechanism got an opposing pair."""


class DependencePresent(SwitchRiskError):
    """An operation that assumes independence got a mechanism with dependence."""


class InfeasibleDependence(SwitchRiskError):
    """No joint distribution matches the requested conditional and marginal."""


class Infeasible(SwitchRiskError):
    """No mechanism on the search grid reproduces the observed risks."""


class ParseError(SwitchRiskError):
    """A data file is structurally malformed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class ValidationError(SwitchRiskError):
    """A data file parsed but violated an invariant."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
