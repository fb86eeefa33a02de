from pydantic_settings import BaseSettings, SettingsConfigDict
from typing import Literal


class Settings(BaseSettings):
    # App Config
    APP_NAME: str = "Beauty Measure"
    VERSION: str = "1.0.0"
    LOG_LEVEL: str = "WARNING"

    # Medida estética
    DEFAULT_MEASURE: Literal["eq14", "eq15"] = "eq15"
    GRADIENT_OPERATOR: Literal["forward", "sobel"] = "forward"

    # Generador
    DEFAULT_WIDTH: int = 64
    DEFAULT_HEIGHT: int = 64
    DEFAULT_KIND: Literal["uniform_noise", "block_mosaic", "symmetric_tile"] = "block_mosaic"
    DEFAULT_SEED: int = 0
    DEFAULT_ITERATIONS: int = 1000

    # Ajuste Maxwell-Boltzmann
    FIT_WEIGHTING: Literal["none", "poisson"] = "none"

    # Procesamiento por lotes
    WORKERS: int = 1

    model_config = SettingsConfigDict(env_file=".env", case_sensitive=True, extra="ignore")


settings = Settings()
