class ModelConstructionError(Exception):
    pass


class NotPositiveSemiDefinite(ModelConstructionError):
    def __init__(self, smallest_eigenvalue: float, name: str = "T"):
        self.smallest_eigenvalue = smallest_eigenvalue
        self.message = f"{name} is not positive semidefinite (smallest eigenvalue {smallest_eigenvalue:.6e})"
        super(NotPositiveSemiDefinite, self).__init__(self.message)


class DegenerateSample(ModelConstructionError):
    def __init__(self, rows):
        self.rows = list(rows)
        self.message = f"Rows {self.rows} of X are identically zero"
        super(DegenerateSample, self).__init__(self.message)


class UnsupportedModel(Exception):
    pass
