from eddeg.cli.main import main

raise SystemExit(main())
