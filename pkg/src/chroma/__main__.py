from chroma.cli import main

main()
