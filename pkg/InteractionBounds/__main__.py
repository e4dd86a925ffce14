import sys

from InteractionBounds.cli import main

sys.exit(main())
