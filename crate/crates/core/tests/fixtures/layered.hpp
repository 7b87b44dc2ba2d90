# a primary frame, a secondary spine and tertiary links across it
hpp
e a b p
e b c p
e c d p
e d e p
e e f p
e f a p
e a d s
e b g s
e g e s
e g c s
e c f t
e b e t
