"""Exception types raised by the texttile pipeline."""


class TextTileError(ValueError):
    """Base class for input errors the CLI reports with exit status 1."""


class EmptyDocument(TextTileError):
    def __init__(self, msg="empty document"):
        super().__init__(msg)


class NoTokens(TextTileError):
    def __init__(self, msg="document contains no word tokens"):
        super().__init__(msg)


class TooShort(TextTileError):
    def __init__(self, msg="need at least 2 token-sequences to score gaps"):
        super().__init__(msg)


class NoParagraphGaps(TextTileError):
    def __init__(self, msg="document has a single paragraph; nothing to segment"):
        super().__init__(msg)


class RangeError(TextTileError, IndexError):
    pass


class MissingSentenceCounts(TextTileError):
    def __init__(self, msg="sentence counts are required to merge short paragraphs"):
        super().__init__(msg)


class JudgeFileError(TextTileError):
    def __init__(self, lineno, msg):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}")
