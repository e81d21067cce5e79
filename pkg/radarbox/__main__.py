import sys

from radarbox.cli.main import main

sys.exit(main())
