"""Exception types shared by every module in the package."""


class InvsgError(Exception):
    """Base class for all errors raised by this package."""


class MalformedTable(InvsgError):
    """Cayley table input is not a well-formed size x size integer table."""


class NonAssociative(InvsgError):
    def __init__(self, a, b, c):
        super().__init__(f"associativity fails at ({a}, {b}, {c})")
        self.witness = (a, b, c)


class StarNotInvolution(InvsgError):
    def __init__(self, a):
        super().__init__(f"star(star({a})) != {a}")
        self.witness = a


class StarNotAntiAutomorphism(InvsgError):
    def __init__(self, a, b):
        super().__init__(f"star({a}*{b}) != star({b})*star({a})")
        self.witness = (a, b)


class NotAnIdeal(InvsgError):
    """The given element set is not a nonempty two-sided ideal."""


class NotStarClosed(InvsgError):
    """The given element set is not closed under the involution."""


class LimitExceeded(InvsgError):
    """Closure generation passed its element-count limit before stabilizing."""


class BoundExceeded(InvsgError):
    """A configured size bound was exceeded."""


class OracleBoundExceeded(InvsgError):
    """A brute-force oracle was asked to run outside its enforced bounds."""


class GeneratorsDoNotGenerate(InvsgError):
    """The supplied generator list does not generate the whole semigroup."""


class NotSameDClass(InvsgError):
    """The two elements do not lie in a common D-class."""


class NotPrime(InvsgError):
    """The claimed field characteristic is not a prime number."""


class DivisionByZero(InvsgError):
    """Multiplicative inverse of the zero field element was requested."""


class MixedFields(InvsgError):
    """Operands belong to different field instances."""


class IncompleteSubstitution(InvsgError):
    """A word was evaluated under a substitution missing some letter."""


class BudgetExceeded(InvsgError):
    """An exhaustive check would exceed the configured evaluation budget."""


class NoSqrtMinusOne(InvsgError):
    """The field contains no square root of -1."""


class NoStarredLetter(InvsgError):
    """The word contains no starred letter where one is required."""


class UnknownCatalogName(InvsgError):
    """The name does not refer to any known catalog semigroup."""


class WordSyntaxError(InvsgError):
    """Word/identity parse failure; carries the offending position."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position
