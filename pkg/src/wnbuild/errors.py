"""Exception types. Each maps to a CLI exit code."""


class InputError(ValueError):
    """Malformed input file or record (exit code 1)."""

    exit_code = 1

    def __init__(self, message, source=None, line_no=None):
        self.source = source
        self.line_no = line_no
        where = ""
        if source is not None:
            where = f"{source}"
            if line_no is not None:
                where += f":{line_no}"
            where += ": "
        super().__init__(where + message)


class WordNetLoadError(InputError):
    pass


class DependencyError(RuntimeError):
    """A stage was run before the stage that produces its inputs (exit code 2)."""

    exit_code = 2

    def __init__(self, stage, missing_stage, path):
        self.stage = stage
        self.missing_stage = missing_stage
        self.path = path
        super().__init__(
            f"stage '{stage}' needs {path}, produced by stage '{missing_stage}'; run it first"
        )


class ConfigError(ValueError):
    """Bad run configuration, unknown filter/heuristic name, missing table entry (exit code 3)."""

    exit_code = 3


class EvaluationError(ValueError):
    exit_code = 1
