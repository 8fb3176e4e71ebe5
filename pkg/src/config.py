"""Configuration management for the purity-dynamics toolkit."""

from pathlib import Path
from typing import Optional
from pydantic import Field
from pydantic_settings import BaseSettings


class SimulationConfig(BaseSettings):
    """Capacity limits and parallelism for the numerical kernels."""

    # State-vector Monte Carlo
    max_amplitudes: int = Field(
        default=2 ** 21,
        description="Largest d^n accepted by the state-vector simulator"
    )

    # Full 2^n transfer-matrix propagation
    max_full_float_sites: int = Field(default=26, description="Largest n for float propagate_full")
    max_full_rational_sites: int = Field(default=16, description="Largest n for rational propagate_full")
    max_explicit_sites: int = Field(default=10, description="Largest n for the explicit 2^n matrix")

    # Exact linear algebra
    max_census_sites: int = Field(default=12, description="Largest n for the even-sector kernel census")
    max_chain_sites: int = Field(default=64, description="Largest n for exact Jordan chains of T")
    max_characteristic_sites: int = Field(
        default=14,
        description="Largest n for the exact characteristic polynomial check"
    )
    max_pseudospectrum_size: int = Field(default=1000, description="Largest n for pseudospectrum sampling")

    # Parallelism (results never depend on this)
    n_jobs: int = Field(default=1, description="joblib worker count for realizations and trials")

    numeric_floor: float = Field(default=1e-300, description="Denominator floor for effective rates")

    class Config:
        env_prefix = "SIM_"
        extra = "ignore"


class SpectraConfig(BaseSettings):
    """Defaults for symbol and pseudospectrum analysis."""

    epsilon: float = Field(default=1e-15, description="Perturbation strength for T + eps*E")
    symbol_grid: int = Field(default=4096, description="Uniform theta samples on the unit circle")
    boundary_tolerance: float = Field(
        default=1e-9,
        description="Distance to the symbol curve treated as on the boundary"
    )
    winding_refinements: int = Field(
        default=6,
        description="Maximum grid doublings when argument increments are under-resolved"
    )

    class Config:
        env_prefix = "SPECTRA_"
        extra = "ignore"


class OutputConfig(BaseSettings):
    """Configuration for output generation."""

    output_dir: Path = Field(
        default=Path("./output"),
        description="Directory for experiment tables (env PHANTOM_OUTPUT_DIR)"
    )
    default_format: str = Field(default="csv", description="csv or json")
    generate_markdown: bool = Field(default=True, description="Render a Markdown summary per run")

    class Config:
        env_prefix = "PHANTOM_"
        extra = "ignore"

    def ensure_output_dir(self):
        """Create output directory if it doesn't exist."""
        self.output_dir.mkdir(parents=True, exist_ok=True)


class AppConfig(BaseSettings):
    """Main application configuration."""

    simulation: SimulationConfig = Field(default_factory=SimulationConfig)
    spectra: SpectraConfig = Field(default_factory=SpectraConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    # Logging
    log_level: str = Field(default="INFO", description="Logging level")
    verbose: bool = Field(default=False, description="Verbose output")

    class Config:
        env_prefix = "APP_"
        extra = "ignore"

    @classmethod
    def from_env(cls, env_file: Optional[str] = None) -> "AppConfig":
        """Load configuration from environment and .env file."""
        if env_file and Path(env_file).exists():
            from dotenv import load_dotenv
            load_dotenv(env_file)

        return cls(
            simulation=SimulationConfig(),
            spectra=SpectraConfig(),
            output=OutputConfig(),
        )

    @classmethod
    def from_args(
        cls,
        output_dir: Optional[str] = None,
        n_jobs: Optional[int] = None,
        epsilon: Optional[float] = None,
        verbose: bool = False,
    ) -> "AppConfig":
        """Create configuration from command line arguments."""
        # Only pass values that were given so env vars/defaults still apply
        output_kwargs = {}
        if output_dir is not None:
            output_kwargs["output_dir"] = Path(output_dir)

        simulation_kwargs = {}
        if n_jobs is not None:
            simulation_kwargs["n_jobs"] = n_jobs

        spectra_kwargs = {}
        if epsilon is not None:
            spectra_kwargs["epsilon"] = epsilon

        return cls(
            simulation=SimulationConfig(**simulation_kwargs),
            spectra=SpectraConfig(**spectra_kwargs),
            output=OutputConfig(**output_kwargs),
            log_level="DEBUG" if verbose else "INFO",
            verbose=verbose,
        )
