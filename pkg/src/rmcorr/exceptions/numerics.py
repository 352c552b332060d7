class NumericalError(Exception):
    pass


class NonConvergence(NumericalError):
    def __init__(self, last_residual: float, iterations: int, grid_index: int = None):
        self.last_residual = last_residual
        self.iterations = iterations
        self.grid_index = grid_index
        location = "" if grid_index is None else f" at grid index {grid_index}"
        self.message = f"No convergence{location} after {iterations} iterations (last residual {last_residual:.3e})"
        super(NonConvergence, self).__init__(self.message)


class IterationInstability(NumericalError):
    def __init__(self, iteration: int, damping: float, grid_index: int = None):
        self.iteration = iteration
        self.damping = damping
        self.grid_index = grid_index
        location = "" if grid_index is None else f" at grid index {grid_index}"
        self.message = (
            f"Iterate left the upper half-plane{location} at iteration {iteration}. "
            f"Try a damping smaller than {damping}"
        )
        super(IterationInstability, self).__init__(self.message)


class BranchSelectionError(NumericalError):
    pass


class DegradedPrecisionWarning(UserWarning):
    def __init__(self, message: str, stderr: float):
        self.stderr = stderr
        super(DegradedPrecisionWarning, self).__init__(message)
