# App configuration
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv
load_dotenv()


class ConfigSettings(BaseSettings):
    default_workers: int = 1
    default_seed: int = 20240917
    event_cap: int = 1_000_000_000  # per replication
    output_dir: str = "results"
    log_level: str = "INFO"
    ks_min_samples: int = 30
    histogram_bins: int = 40

    model_config = SettingsConfigDict(env_file=".env", env_prefix="SIRSX_", extra="ignore")


Setting = ConfigSettings()
