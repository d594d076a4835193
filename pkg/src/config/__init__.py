from .settings import LogLevel, Settings, get_settings, parse_size_schedule

# PresetManager は schemas (→ backend) に依存するため config.presets から直接 import する
__all__ = ["LogLevel", "Settings", "get_settings", "parse_size_schedule"]
