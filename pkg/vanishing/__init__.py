# vanishing/__init__.py
import importlib
import os

from utils.console import warn

_strategy_registry = {}
_strategies_discovered = False


def register_strategy(name):
    """
    Decorator to register vanishing-order strategy classes.
    """

    def decorator(cls):
        cls.mode = name
        _strategy_registry[name] = cls
        return cls

    return decorator


def _discover_strategies(strategy_dir):
    """
    Imports every strategy module in the given directory so that its
    @register_strategy decorator runs.

    Args:
        strategy_dir (str): The directory containing the strategy implementations.
    """
    global _strategies_discovered
    if _strategies_discovered:
        return
    for filename in sorted(os.listdir(strategy_dir)):
        if (
            filename.endswith(".py")
            and filename not in ("__init__.py", "strategy.py", "order.py")
        ):
            module_path = f"vanishing.{filename[:-3]}"
            try:
                importlib.import_module(module_path)
            except ModuleNotFoundError as e:
                warn(f"Could not import {module_path}. Error: {e}")
    _strategies_discovered = True


def available_strategies():
    _discover_strategies(os.path.dirname(__file__))
    return sorted(_strategy_registry)


def create_strategy(mode, strategy_dir=None, **kwargs):
    """
    Creates an instance of the strategy registered under `mode`.

    Args:
        mode (str): One of the registered modes, e.g. "exact_2d".
        strategy_dir (str, optional): Where strategy modules live.
        **kwargs: Passed to the strategy constructor.

    Returns:
        VanishingOrderStrategy: The strategy instance.

    Raises:
        ValueError: If no strategy is registered under that mode.
    """
    if not strategy_dir:
        strategy_dir = os.path.dirname(__file__)
    _discover_strategies(strategy_dir)
    strategy_class = _strategy_registry.get(mode)
    if not strategy_class:
        raise ValueError(f"Invalid vanishing-order mode: {mode}")
    return strategy_class(**kwargs)
