import sys

from gdpart_cli.main import main

sys.exit(main())
