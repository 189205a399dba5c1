class ExtractorError(Exception):
    pass


class InvalidJob(ExtractorError):
    pass


class ModelNotFound(ExtractorError):
    pass


class DatasetNotFound(ExtractorError):
    pass


class ShapeMismatch(ExtractorError):
    """Feature width changed between batches."""
