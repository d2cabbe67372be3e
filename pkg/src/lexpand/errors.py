"""Exception hierarchy shared by every lexpand module."""


class LexpandError(Exception):
    """Base class; the CLI maps subclasses to exit codes."""

    module = "lexpand"


class ParseError(LexpandError, ValueError):
    """A record could not be parsed. Carries 1-based line and 0-based byte column."""

    module = "wndb"

    def __init__(self, message, line=None, column=None, path=None):
        self.message = message
        self.line = line
        self.column = column
        self.path = path
        where = []
        if path is not None:
            where.append(str(path))
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"col {column}")
        prefix = ":".join(where)
        super().__init__(f"{prefix}: {message}" if prefix else message)


class LoadError(LexpandError, OSError):
    module = "wndb"


class IntegrityError(LexpandError):
    module = "wndb"

    def __init__(self, message, offenders=()):
        self.offenders = list(offenders)
        super().__init__(message)


class LookupFailure(LexpandError, KeyError):
    module = "taxonomy"

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown synset"


class ConfigError(LexpandError, ValueError):
    module = "config"


class ContractError(LexpandError, ValueError):
    module = "classifier"


class FetchError(LexpandError):
    module = "corpus"

    def __init__(self, doc_id, reason):
        self.doc_id = doc_id
        self.reason = reason
        super().__init__(f"{doc_id}: {reason}")
