"""Bundled demonstration quivers and representations.

demo_quiver_text: an ungraded two-vertex quiver whose product table is
idempotent; three non-identity edges g, d, c with a nilpotency relation
g.g = 0 and commutation forced by the interchange family.  Its checked
representation over F_2 sends g to 0 and d, c to the identity.

graded_demo_text: a graded quiver with one odd vertex w, w (x) w = 1, and
an odd generator q whose product companions close up over eight edges.  The
symmetry edge on (w, w) acts as -1 in any graded representation; the
bundled representation over F_3 has nonzero odd maps (kappa on (w, w) must
be -1 for the splitting relation qw.q = e_1 to hold).
"""

from __future__ import annotations

DEMO_QUIVER = """\
# ungraded demonstration quiver: idempotent product table
vertex 1
vertex v
unit = 1
tensor 1 1 = 1
tensor 1 v = v
tensor v 1 = v
tensor v v = v
edge g : v -> v
edge d : v -> v
edge c : 1 -> v
alpha 1 1 = id_1
alpha 1 v = id_v
alpha v 1 = id_v
alpha v v = id_v
beta 1 1 1 = id_1
beta 1 1 v = id_v
beta 1 v 1 = id_v
beta v 1 1 = id_v
beta 1 v v = id_v
beta v 1 v = id_v
beta v v 1 = id_v
beta v v v = id_v
betainv 1 1 1 = id_1
betainv 1 1 v = id_v
betainv 1 v 1 = id_v
betainv v 1 1 = id_v
betainv 1 v v = id_v
betainv v 1 v = id_v
betainv v v 1 = id_v
betainv v v v = id_v
unitor 1 = id_1 id_1
unitor v = id_v id_v
tid g 1 = g
tid g v = g
tid d 1 = d
tid d v = d
tid c 1 = c
tid c v = d
idt 1 g = g
idt v g = g
idt 1 d = d
idt v d = d
idt 1 c = c
idt v c = d
relation g.g = 0
relation d.d = d
"""

DEMO_REP = """\
ring Z/2
rep vertex 1 = free(Z/2, 1)
rep vertex v = free(Z/2, 1)
rep edge g = [[0]]
rep edge d = [[1]]
rep edge c = [[1]]
kappa 1 1 = [[1]]
kappa 1 v = [[1]]
kappa v 1 = [[1]]
kappa v v = [[1]]
kappa0 = [[1]]
"""

GRADED_DEMO_QUIVER = """\
# graded demonstration quiver: one odd vertex, w (x) w = 1
vertex 1 grade 0
vertex w grade 1
unit = 1
tensor 1 1 = 1
tensor 1 w = w
tensor w 1 = w
tensor w w = 1
edge aw : 1 -> 1
edge aww : w -> w
edge q : 1 -> w
edge qm : 1 -> w
edge qw : w -> 1
edge qw2 : w -> 1
alpha 1 1 = id_1
alpha 1 w = id_w
alpha w 1 = id_w
alpha w w = aw
beta 1 1 1 = id_1
beta 1 1 w = id_w
beta 1 w 1 = id_w
beta w 1 1 = id_w
beta 1 w w = id_1
beta w 1 w = id_1
beta w w 1 = id_1
beta w w w = id_w
betainv 1 1 1 = id_1
betainv 1 1 w = id_w
betainv 1 w 1 = id_w
betainv w 1 1 = id_w
betainv 1 w w = id_1
betainv w 1 w = id_1
betainv w w 1 = id_1
betainv w w w = id_w
unitor 1 = id_1 id_1
unitor w = id_w id_w
tid aw 1 = aw
tid aw w = aww
tid aww 1 = aww
tid aww w = aw
tid q 1 = q
tid q w = qw
tid qm 1 = qm
tid qm w = qw2
tid qw 1 = qw
tid qw w = q
tid qw2 1 = qw2
tid qw2 w = qm
idt 1 aw = aw
idt w aw = aww
idt 1 aww = aww
idt w aww = aw
idt 1 q = q
idt w q = qw2
idt 1 qm = qm
idt w qm = qw
idt 1 qw = qw
idt w qw = qm
idt 1 qw2 = qw2
idt w qw2 = q
relation aww.aww = e_w
relation qw.q = e_1
relation qm.aw = q
relation q.aw = qm
relation qw.aww = qw2
relation qw2.aww = qw
"""

GRADED_DEMO_REP = """\
ring Z/3
rep vertex 1 = free(Z/3, 1)
rep vertex w = free(Z/3, 1)
rep edge aw = [[2]]
rep edge aww = [[2]]
rep edge q = [[1]]
rep edge qm = [[2]]
rep edge qw = [[1]]
rep edge qw2 = [[2]]
kappa 1 1 = [[1]]
kappa 1 w = [[1]]
kappa w 1 = [[1]]
kappa w w = [[2]]
kappa0 = [[1]]
"""
