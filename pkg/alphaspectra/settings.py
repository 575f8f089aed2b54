from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file_encoding="utf-8", env_prefix="ALPHA_SPECTRA_"
    )

    # Whether to show user warnings (near-ties, exact ties, skipped family members)
    SHOW_WARNINGS: bool = True

    # Residual tolerance ||A_alpha x - rho x||_inf of the power iteration
    TOL: float = 1e-10

    # Iteration budget of the power iteration before NoConvergence is raised
    MAX_ITERS: int = 100_000

    # Perron entries closer than this are treated as ties by the lemma suites
    PERRON_TIE_TOL: float = 1e-9

    # Radii closer than this are reported as near-ties and escalated to exact
    # characteristic polynomial comparison
    TIE_TOL: float = 1e-7

    # Largest order accepted by the enumeration oracle
    ENUMERATION_CAP: int = 11

    # Worker processes for enumeration and lemma suites (1 runs in-process)
    THREADS: int = 1

    # Randomised instances per lemma suite
    LEMMA_INSTANCES: int = 200

    # Default PRNG seed of the lemma suites
    SEED: int = 0

    # Root log level used by the command line interface
    LOG_LEVEL: str = "WARNING"
