# -*- coding: utf-8 -*-
"""
Shared dependencies.

Provides the process-wide settings instance used by the services when no
explicit configuration is passed, and by the routers through FastAPI's
dependency injection.
"""

from app.config import Settings, load_settings

_settings_instance = None


def get_settings_instance() -> Settings:
    """
    Factory function to provide a single settings instance.

    Returns
    -------
    Settings
        The settings loaded on first use.
    """
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = load_settings()
    return _settings_instance


def set_settings_instance(settings: Settings) -> None:
    """
    Replaces the shared settings (used by the CLI after parsing its flags).
    """
    global _settings_instance
    _settings_instance = settings
