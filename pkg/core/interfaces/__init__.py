from .command_interface import WignerStoneCommandInterface, command_server, main
