# ----------------------------------------------------------------------------------------------------------------------
def command(name, help=''):
    # type: (str, str) -> callable
    """
    Expose an interface method as a command line subcommand.

    :param name: the subcommand name, for example 'jordan-split'.
    :type name: str

    :param help: one line description shown by --help.
    :type help: str

    :return: the decorated method
    :rtype: callable
    """
    def wrapper(fn):
        fn.command_name = name
        fn.command_help = help or (fn.__doc__ or '').strip().split('\n')[0]
        # -- registered under the subcommand name only, never under the method name
        fn.hidden = True
        return fn
    return wrapper


# ----------------------------------------------------------------------------------------------------------------------
def hidden(fn):
    """
    Keep a public method from being exposed as a server command.
    """
    fn.hidden = True
    return fn
