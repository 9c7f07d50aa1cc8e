class NsemError(Exception):
    """Base class for every error raised by the engine"""
    exit_code = 3
    status_code = 422
    kind = 'engine_error'

    def to_dict(self):
        return {'error': str(self), 'kind': self.kind}


class ModelValidationError(NsemError):
    kind = 'model_validation'

    def __init__(self, report, message=None):
        self.report = report
        super().__init__(message or f"Invalid model: {'; '.join(report.violations)}")

    def to_dict(self):
        data = super().to_dict()
        data['violations'] = list(self.report.violations)
        return data


class MalformedWorldError(NsemError):
    kind = 'malformed_world'


class FormulaSyntaxError(NsemError):
    kind = 'formula_syntax'

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)

    def to_dict(self):
        data = super().to_dict()
        data.update({'line': self.line, 'column': self.column})
        return data


class FormulaRangeError(FormulaSyntaxError):
    kind = 'formula_range'


class SideConditionError(NsemError):
    kind = 'side_condition'


class StructureError(NsemError):
    kind = 'structure'


class EnumerationLimitError(NsemError):
    kind = 'enumeration_limit'


class SettingError(NsemError):
    """The world of a setting is not a solution of the model"""
    exit_code = 4
    status_code = 409
    kind = 'setting'


class RequestError(NsemError):
    """Malformed API request body"""
    exit_code = 2
    status_code = 400
    kind = 'bad_request'
