#  Copyright (c) torichow authors 2026-10-18.

from torichow.cli.main import main

if __name__ == "__main__":
    main()
