import sys

from koc2.cli import main


sys.exit(main())
