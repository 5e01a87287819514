from qolab.cli import App
from .expand_root import expand_root_callback
from .orders import orders_callback


def register(app: App):
    app.command("expand-root")(expand_root_callback)
    app.command("orders")(orders_callback)
