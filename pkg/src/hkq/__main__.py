"""Entry point for 'python -m hkq'."""

from hkq.cli import main

if __name__ == "__main__":
    main()
