from flask import Flask
from flask_cors import CORS
from werkzeug.middleware.proxy_fix import ProxyFix

from app import config
from app.logs import setup_logging


def create_app():
    app = Flask(__name__)
    app.config['PROPAGATE_EXCEPTIONS'] = True
    app.config['SECRET_KEY'] = config.SECRET_KEY

    setup_logging()

    CORS(app, resources={r"/*": {"origins": "*"}})

    app.wsgi_app = ProxyFix(
        app.wsgi_app,
        x_for=1,
        x_proto=1,
        x_host=1,
        x_port=1
    )

    from .routes.verify import verify_bp
    app.register_blueprint(verify_bp)

    # `flask gb|mult|verify-paper` mirror the run.py commands
    from .cli import gb, mult, verify_paper
    for command in (gb, mult, verify_paper):
        app.cli.add_command(command)

    return app
