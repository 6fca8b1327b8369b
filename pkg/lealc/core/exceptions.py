"""
Error hierarchy for the reasoner.
Every error carries the process exit code the CLI maps it to.
"""

from typing import Optional


class LeAlcError(Exception):
    """Base class for all reasoner errors"""

    exit_code: int = 2

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


# ============================================================================
# KNOWLEDGE-BASE TEXT
# ============================================================================

class KBParseError(LeAlcError):
    """Lexical or grammatical error in a knowledge-base file"""

    exit_code = 2


class SortError(KBParseError):
    """An object used where a feature is expected, or vice versa"""


class UndeclaredNameError(KBParseError):
    """Identifier used without a matching declaration"""


# ============================================================================
# TBOX
# ============================================================================

class TBoxError(LeAlcError):
    """TBox rejected before saturation"""

    exit_code = 3


class CyclicTBoxError(TBoxError):
    def __init__(self, cycle: list[str], line: Optional[int] = None):
        super().__init__("cyclic TBox: " + " -> ".join(cycle), line)
        self.cycle = cycle


class DuplicateDefinitionError(TBoxError):
    def __init__(self, name: str, line: Optional[int] = None):
        super().__init__(f"concept {name} is defined more than once", line)
        self.name = name


class NonAtomicDefinitionError(TBoxError):
    """General equations and GCIs need an atomic left-hand side"""


class FreshNameCollisionError(TBoxError):
    def __init__(self, name: str):
        super().__init__(f"fresh concept name {name} is already in use")
        self.name = name


# ============================================================================
# SEMANTICS, ENGINE, ORACLE
# ============================================================================

class SemanticsError(LeAlcError):
    """Element, role, atom or individual not known to a context or interpretation"""

    exit_code = 2


class LatticeTooLargeError(SemanticsError):
    pass


class EngineError(LeAlcError):
    """Internal engine failure; never expected on valid input"""


class SafetyLimitExceeded(EngineError):
    def __init__(self, limit: int):
        super().__init__(f"saturation exceeded the safety limit of {limit} rule applications")
        self.limit = limit


class EngineInvariantError(EngineError):
    pass


class PreconditionError(LeAlcError):
    """Operation called on a tableau in the wrong state"""


class OracleBoundError(LeAlcError):
    exit_code = 2
