from qolab.cli import App
from .almost_qo import almost_qo_callback
from .coordinate import coordinate_callback
from .qo_property import qo_property_callback


def register(app: App):
    app.command("embedding")(coordinate_callback)
    app.command("qo-property")(qo_property_callback)
    app.command("almost-qo")(almost_qo_callback)
