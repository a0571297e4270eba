"""Exception hierarchy shared by every pedcmp module."""


class PedigreeError(ValueError):
    """Base class for invalid pedigree input or unsatisfied preconditions."""


class CycleDetected(PedigreeError):
    pass


class BadInDegree(PedigreeError):
    def __init__(self, ident, degree):
        super().__init__(f"individual {ident!r} has {degree} parents (need 0 or 2)")
        self.ident = ident
        self.degree = degree


class SameGenderParents(PedigreeError):
    def __init__(self, ident):
        super().__init__(f"the parents of {ident!r} have the same gender")
        self.ident = ident


class DuplicateLabel(PedigreeError):
    def __init__(self, label):
        super().__init__(f"label {label} is used more than once")
        self.label = label


class DanglingEdge(PedigreeError):
    def __init__(self, edge):
        super().__init__(f"edge {edge!r} refers to an unknown individual")
        self.edge = edge


class DuplicateEdge(PedigreeError):
    def __init__(self, edge):
        super().__init__(f"edge {edge!r} appears more than once")
        self.edge = edge


class DuplicateIndividual(PedigreeError):
    def __init__(self, ident):
        super().__init__(f"individual {ident!r} is defined more than once")
        self.ident = ident


class PedFormatError(PedigreeError):
    def __init__(self, lineno, message):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class NotGenerational(PedigreeError):
    pass


class InvalidSubset(PedigreeError):
    def __init__(self, ident, reason="in-degree is not 0 or 2 in the induced graph"):
        super().__init__(f"{ident!r}: {reason}")
        self.ident = ident


class NotLeafLabeled(PedigreeError):
    pass


class NotCompatiblyLeafLabeled(PedigreeError):
    pass


class InvalidMatching(PedigreeError):
    pass


class TooLarge(PedigreeError):
    pass


class PreconditionViolated(PedigreeError):
    def __init__(self, which):
        super().__init__(f"precondition violated: {which}")
        self.which = which


class NoMatchingWithinBound(PedigreeError):
    def __init__(self, generation, k):
        super().__init__(f"no generation-{generation} matching with consecutive-generation cost < {k}")
        self.generation = generation
        self.k = k


class InfeasibleConfig(PedigreeError):
    pass


class IsolatedVertex(PedigreeError):
    def __init__(self, vertex):
        super().__init__(f"vertex {vertex!r} has no incident edge")
        self.vertex = vertex
