# Triangle: not 2-colourable.
universe a b c
relation E 2
a b
b a
b c
c b
c a
a c
