"""Exception types shared across the solver."""


class AdjflowError(Exception):
    pass


class NonConvergence(AdjflowError):
    """Poisson solve exceeded its iteration budget."""

    def __init__(self, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"pressure solve did not converge: residual {residual:.3e} "
            f"after {iterations} iterations"
        )


class MissingCheckpoint(AdjflowError):
    def __init__(self, step):
        self.step = step
        super().__init__(f"midpoint checkpoint for step {step} is not available")


class ShapeMismatch(AdjflowError):
    pass


class SimulationNaN(AdjflowError):
    """A field went non-finite; carries the step and field name."""

    def __init__(self, step, field):
        self.step = step
        self.field = field
        super().__init__(f"non-finite values in field '{field}' at step {step}")


class DivergedLoss(AdjflowError):
    pass


class ConfigError(AdjflowError):
    pass
