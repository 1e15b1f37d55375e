"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 for invalid input / configuration, 3 for physics-domain failures.
"""


class TwoAtomError(ValueError):
    exit_code = 3


class InputError(TwoAtomError):
    exit_code = 2


class PhysicsError(TwoAtomError):
    exit_code = 3


class GridTooCoarse(InputError):
    pass


class PacketTruncated(InputError):
    pass


class GridMismatch(InputError):
    pass


class DimensionMismatch(InputError):
    pass


class TooLarge(InputError):
    pass


class NonpositiveTemperature(InputError):
    pass


class WrapAround(PhysicsError):
    pass


class ZeroAmplitude(PhysicsError):
    pass


class PauliViolation(PhysicsError):
    pass


class FermionEqualState(PauliViolation):
    pass


class DegenerateBaseline(PhysicsError):
    pass


class IndistinguishableFinals(PhysicsError):
    pass
