# primary K4, secondary apex edges, one tertiary edge
hpp
e a b p
e a c p
e a d p
e b c p
e b d p
e c d p
e e a s
e e b s
e e c s
e e d t
