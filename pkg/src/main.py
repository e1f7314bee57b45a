from src.cli.app import cli


def main():
    cli(prog_name="homometry-lab")


if __name__ == "__main__":
    main()
