# Four-cycle: 2-colourable.
universe a b c d
relation E 2
a b
b a
b c
c b
c d
d c
d a
a d
