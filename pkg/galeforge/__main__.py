"""Allow ``python -m galeforge``."""
from galeforge.cli import main

if __name__ == "__main__":
    main()
