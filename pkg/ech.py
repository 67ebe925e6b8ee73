import sys

from toricech.cli import init_parser, main


if __name__ == '__main__':
    session = init_parser()
    arguments = session.parse_args()
    sys.exit(main(arguments))
