class HHLabError(Exception):
    """Base class for every error raised by hh_lab"""
    pass


class InvalidArgumentError(HHLabError, ValueError):
    """An argument violates an operation's precondition"""
    pass


class ArithmeticDomainError(HHLabError, ArithmeticError):
    """Division by zero or a function evaluated outside its domain"""
    pass


class RangeError(HHLabError, OverflowError):
    """A value does not fit the binary floating-point exponent range"""
    pass


class ExprSyntaxError(InvalidArgumentError):
    """Malformed function-definition text"""

    def __init__(self, message, offset, expected=()):
        self.offset = offset
        self.expected = tuple(sorted(expected))
        detail = f' (expected one of: {", ".join(self.expected)})' if self.expected else ''
        super().__init__(f'{message} at offset {offset}{detail}')


class StrategyMisuseError(InvalidArgumentError):
    """A bound strategy was requested for a function it cannot serve"""
    pass


class NoSupportError(HHLabError):
    """No supporting line from below exists at the requested point"""
    pass


class TableLookupError(HHLabError, KeyError):
    """A tabulated function was queried at a point it does not hold"""
    pass
