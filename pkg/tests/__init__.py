"""Package init | pydocstyle ignore isn't working :/."""
