from dataclasses import asdict, dataclass, fields


@dataclass(frozen=True)
class SolverConfig:
    """Tolerances and budgets shared by every solver in the package.

    The first seven fields are the core knobs; the rest size the tongue
    scans and the complex critical-orbit classifier.
    """

    root_tol: float = 1e-9
    cycle_tol: float = 1e-10
    max_transient: int = 20000
    max_period: int = 16
    phi_depth: int = 60
    escape_log_threshold: float = 50.0
    koenigs_depth: int = 200
    orbit_budget: int = 100000
    on_circle_tol: float = 1e-6
    section_cells: int = 4096
    path_step: float = 1.0 / 256

    def __post_init__(self):
        for name in ("root_tol", "cycle_tol", "escape_log_threshold", "on_circle_tol", "path_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")
        for name in ("max_transient", "max_period", "phi_depth", "koenigs_depth",
                     "orbit_budget", "section_cells"):
            if int(getattr(self, name)) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.max_period > 62:
            raise ValueError("max_period must be <= 62 (types are stored as int64 numerators)")

    def to_dict(self):
        return asdict(self)

    @classmethod
    def from_dict(cls, data):
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in data.items() if k in known})


DEFAULT_CONFIG = SolverConfig()
