"""Exception hierarchy shared across the toolkit."""


class MultitreeError(Exception):
    """Base class for all toolkit errors."""


class DataError(MultitreeError):
    """A dataset, schema, or input file is malformed."""


class SchemaSyntaxError(DataError):
    def __init__(self, line_no, message):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateAttributeError(DataError):
    pass


class EmptyValueSetError(DataError):
    pass


class FewerThanTwoClassesError(DataError):
    pass


class ArityMismatchError(DataError):
    def __init__(self, row_no, message):
        super().__init__(f"row {row_no}: {message}")
        self.row_no = row_no


class UnknownDiscreteValueError(DataError):
    def __init__(self, row_no, column, message):
        super().__init__(f"row {row_no}, column {column}: {message}")
        self.row_no = row_no
        self.column = column


class UnknownLabelError(DataError):
    def __init__(self, row_no, message):
        super().__init__(f"row {row_no}: {message}")
        self.row_no = row_no


class NumericParseError(DataError):
    def __init__(self, row_no, column, message):
        super().__init__(f"row {row_no}, column {column}: {message}")
        self.row_no = row_no
        self.column = column


class BadCountError(DataError):
    pass


class SchemaMismatchError(MultitreeError):
    pass


class InapplicableTestError(MultitreeError):
    pass


class EmptyTrainingSetError(MultitreeError):
    pass


class ScriptedChoiceError(MultitreeError):
    def __init__(self, path, message):
        super().__init__(f"at node {list(path)}: {message}")
        self.path = path


class EmptyHoldoutError(MultitreeError):
    pass


class EmptyTestSetError(MultitreeError):
    pass


class NotAProbabilityVectorError(MultitreeError):
    pass


class BadKError(MultitreeError):
    pass


class BadCountsError(MultitreeError):
    pass


class LengthMismatchError(MultitreeError):
    pass


class ZeroNormalizerError(MultitreeError):
    pass


class BadIndexError(MultitreeError):
    pass


class NoSuchSessionError(MultitreeError):
    pass


class TreeCompleteError(MultitreeError):
    pass


class InvalidChoiceError(MultitreeError):
    pass


class EmptyShelfError(MultitreeError):
    pass
