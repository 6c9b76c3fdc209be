"""Exception hierarchy shared by every pgroup module."""


class GroupError(Exception):
    """Base class for all pgroup errors."""


# explicit tables

class TableError(GroupError, ValueError):
    pass


class NotAssociative(TableError):
    def __init__(self, triple):
        self.triple = tuple(int(t) for t in triple)
        x, y, z = self.triple
        super().__init__(f"table is not associative: ({x}*{y})*{z} != {x}*({y}*{z})")


class NoIdentity(TableError):
    pass


class MissingInverse(TableError):
    def __init__(self, element):
        self.element = int(element)
        super().__init__(f"element {self.element} has no two-sided inverse")


class NotAPermutationRow(TableError):
    def __init__(self, kind, index):
        self.kind = kind
        self.index = int(index)
        super().__init__(f"{kind} {self.index} of the table is not a permutation")


class TooLarge(GroupError):
    pass


# presentations

class PresentationSyntaxError(GroupError, SyntaxError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)
        # keep the standard SyntaxError attributes in step
        self.lineno, self.offset = line, column


class NonCentralCommutator(GroupError):
    pass


class BadRelativeOrder(GroupError):
    pass


class InconsistentPresentation(GroupError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message if witness is None else f"{message} (witness {witness})")


# structure

class NotPGroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class DerivedNotCyclic(GroupError):
    pass


class NonAbelianRequired(GroupError):
    pass


class DecompositionFailed(GroupError):
    pass


# automorphisms

class NotAHomomorphism(GroupError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotBijective(GroupError):
    pass


class DoesNotGenerate(GroupError):
    pass


class NotAProduct(GroupError):
    pass


class FactorsDontCommute(GroupError):
    pass


class FixedSetViolation(GroupError):
    pass


class NotMaximal(GroupError):
    pass


class BadCosetElement(GroupError):
    pass


class NotCentralOrderP(GroupError):
    pass


# pipeline and oracle

class PreconditionViolated(GroupError):
    pass


class ConstructionFailed(GroupError):
    def __init__(self, stage, witnesses=None):
        self.stage = stage
        self.witnesses = dict(witnesses or {})
        super().__init__(f"construction failed at {stage}: {self.witnesses}")


class RelationNotFound(GroupError):
    pass


class BudgetExhausted(GroupError):
    def __init__(self, nodes, partial=None):
        self.nodes = nodes
        self.partial = partial
        super().__init__(f"search budget exhausted after {nodes} nodes")


class IncompleteEnumeration(GroupError):
    pass


class TheoremViolation(GroupError):
    """Raised when a class-2 input has no witness automorphism; never expected."""
