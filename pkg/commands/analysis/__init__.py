from qolab.cli import App
from .approx_roots import approx_roots_callback
from .family import family_callback
from .irreducible import irreducible_callback
from .qo_check import qo_check_callback
from .semigroup import semigroup_callback


def register(app: App):
    app.command("qo-check")(qo_check_callback)
    app.command("irreducible")(irreducible_callback)
    app.command("semigroup")(semigroup_callback)
    app.command("approx-roots")(approx_roots_callback)
    app.command("family")(family_callback)
