from pmsmetrics.cli import main

main()
