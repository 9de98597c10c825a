from dotenv import load_dotenv

load_dotenv()

from app.cli import cli  # noqa: E402  (config reads the environment at import)

if __name__ == "__main__":
    cli()
