"""Exception hierarchy for the factorization pipeline."""


class FactorizationError(Exception):
    """Base class. ``stage`` names the pipeline step that raised."""

    stage = "unknown"

    def __init__(self, message="", stage=None):
        super().__init__(message)
        if stage is not None:
            self.stage = stage

    def __str__(self):
        return f"{type(self).__name__}[{self.stage}]: {self.args[0] if self.args else ''}"


class InputError(FactorizationError, ValueError):
    stage = "input"


class NoRegularPoint(FactorizationError):
    stage = "choose_x0"


class NotPositiveDefinite(FactorizationError):
    stage = "normalize"


class OddMultiplicity(FactorizationError):
    """No real factor of half degree exists: some eigenvalue has odd multiplicity."""

    stage = "eigenstructure"


class ClusterFailure(OddMultiplicity):
    pass


class OddRealBlock(OddMultiplicity):
    stage = "construct_Y"


class UnpairedOddBlock(OddMultiplicity):
    stage = "construct_Y"


class DefectiveBeyondGeneric(FactorizationError):
    """Eigenstructure outside the generic regime; exact Jordan data is required."""

    stage = "eigenstructure"


class SingularX1(FactorizationError):
    stage = "solve_X"


class RankMismatch(FactorizationError):
    stage = "rank_n_factor"


class NotPSD(FactorizationError):
    stage = "rank_n_factor"
