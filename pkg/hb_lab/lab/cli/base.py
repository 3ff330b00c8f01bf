"""Base sub-command interface and registry."""

import argparse
import inspect
from abc import ABC, abstractmethod
from typing import Dict, List, Type

from docstring_parser import Docstring, parse

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_DIVERGENT = 2
EXIT_CONFIG = 3


class Command(ABC):
    """Abstract base class of every sub-command.

    The class docstring is the help text: its short description becomes the sub-command
    summary and its ``Args`` entries document the command's own options.
    """

    name: str = ''

    @classmethod
    def docstring(cls) -> Docstring:
        return parse(inspect.getdoc(cls) or '')

    @classmethod
    def summary(cls) -> str:
        return cls.docstring().short_description or cls.name

    @classmethod
    def description(cls) -> str:
        doc = cls.docstring()
        return '\n\n'.join(part for part in (doc.short_description, doc.long_description) if part)

    @classmethod
    def help_for(cls, option: str) -> str:
        """Help of an option, taken from the ``Args`` entry of the same name."""
        for param in cls.docstring().params:
            if param.arg_name == option:
                return param.description or ''
        return ''

    @classmethod
    def add_arguments(cls, parser: argparse.ArgumentParser) -> None:
        """Register the command's own options."""
        pass

    @abstractmethod
    def run(self, args: argparse.Namespace) -> int:
        """Execute the command and return the process exit code."""
        pass


class CommandFactory:
    """Factory for sub-command instances."""

    _commands: Dict[str, Type[Command]] = {}

    @classmethod
    def register_command(cls, name: str, command_class: Type[Command]):
        command_class.name = name
        cls._commands[name] = command_class

    @classmethod
    def create_command(cls, name: str) -> Command:
        if name not in cls._commands:
            raise ValueError(f'Command {name} is not registered')
        return cls._commands[name]()

    @classmethod
    def get_command_class(cls, name: str) -> Type[Command]:
        return cls._commands[name]

    @classmethod
    def get_available_commands(cls) -> List[str]:
        return list(cls._commands.keys())


def register_command(name: str):
    """Decorator for registering sub-commands.

    Args:
        name: Sub-command name on the command line
    """

    def decorator(command_class: Type[Command]):
        CommandFactory.register_command(name, command_class)
        return command_class

    return decorator
