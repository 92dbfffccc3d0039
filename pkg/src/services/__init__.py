"""
Application services module.

Singletons shared by every command:
- ConfigService: shipped defaults merged with the user's JSON, turned
  into an immutable RunConfig
- LoggerService: console output plus one log file per run
"""

from src.services.base import BaseService
from src.services.config_service import ConfigService
from src.services.logger_service import LoggerService

__all__ = ["BaseService", "ConfigService", "LoggerService"]
