from .command_decorators import command, hidden
