import sys

from wigner_stone.core.interfaces import main


if __name__ == '__main__':
    sys.exit(main())
