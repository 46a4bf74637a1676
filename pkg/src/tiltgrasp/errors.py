"""Exception types raised by the tilt-grasp library."""


class TiltGraspError(ValueError):
    """Base class for every domain error in this package."""


class NoValidPlacement(TiltGraspError):
    pass


class DeltaOutOfRange(TiltGraspError):
    pass


class MissingSlipDirection(TiltGraspError):
    pass


class DegenerateEdgeImages(TiltGraspError):
    pass


class ParallelNormals(TiltGraspError):
    pass


class NoFeasiblePath(TiltGraspError):
    pass


class ArcBudgetExceeded(TiltGraspError):
    pass


class SpecMismatch(TiltGraspError):
    pass
