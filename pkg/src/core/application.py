"""
Main Application class.

Handles service registration, event-bus logging and dispatch to the
command-line interface.
"""

from __future__ import annotations

from typing import Any, Sequence

from src.core.container import container
from src.core.signals import event_bus


class Application:
    """
    Main application class.

    Responsible for:
    - Registering services in the DI container
    - Routing event-bus notifications to the logger
    - Running one CLI command

    Usage:
        app = Application()
        exit_code = app.run(["run", "--out", "results/e2r"])
    """

    _instance: Application | None = None

    def __new__(cls) -> Application:
        """Ensure singleton instance."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self) -> None:
        """Initialize the application."""
        if hasattr(self, "_initialized"):
            return

        self._initialized = True
        self._ready = False

    def _register_services(self) -> None:
        """Register all services in the DI container."""
        from src.features.grasp_env.base import GraspEnvironment, create_environment
        from src.services.config_service import ConfigService
        from src.services.logger_service import LoggerService

        # Register services as singletons
        container.register_singleton(LoggerService)
        container.register_singleton(ConfigService)

        # Environment backends are built per configuration
        container.register_factory(GraspEnvironment, create_environment)

        logger = container.resolve(LoggerService)
        logger.debug("Services registered successfully")

    def _setup_signal_handlers(self) -> None:
        """Setup global signal handlers."""
        from src.services.logger_service import LoggerService

        logger = container.resolve(LoggerService)

        def on_generation(log: Any) -> None:
            logger.debug(
                "generation %d: rollouts=%d successes=%d (+%d) archive=%d AC=%.4f GC=%.4f",
                log.generation, log.rollouts, log.successes_total, log.new_successes,
                log.archive_size, log.approach_coverage, log.grasp_coverage,
            )

        def on_finished(label: str, summary: Any) -> None:
            logger.debug("%s summary: %s", label, summary.to_dict())

        event_bus.run_started.connect(lambda label, params: logger.info("%s: run started %s", label, params))
        event_bus.generation_completed.connect(on_generation)
        event_bus.impatience_triggered.connect(
            lambda label, generation: logger.info("%s: impatience restart at generation %d", label, generation)
        )
        event_bus.regeneration_triggered.connect(
            lambda label, generation, count: logger.info(
                "%s: regeneration at generation %d (%d successes injected)", label, generation, count
            )
        )
        event_bus.run_finished.connect(on_finished)

        # Log errors
        event_bus.error_occurred.connect(
            lambda error_type, message: logger.debug("%s: %s", error_type, message)
        )

        # Log warnings
        event_bus.warning_occurred.connect(
            lambda warning_type, message: logger.warning("%s: %s", warning_type, message)
        )

    def initialize(self) -> None:
        """
        Initialize the application.

        Safe to call more than once.
        """
        if self._ready:
            return
        self._register_services()
        self._setup_signal_handlers()
        self._ready = True

    def run(self, argv: Sequence[str] | None = None) -> int:
        """
        Run one command.

        Args:
            argv: Command-line arguments (defaults to ``sys.argv[1:]``)

        Returns:
            Process exit code
        """
        from src.views.cli import main as cli_main

        self.initialize()
        return cli_main(argv)


def main(argv: Sequence[str] | None = None) -> int:
    """
    Application entry point.

    Returns:
        Application exit code
    """
    app = Application()
    return app.run(argv)
