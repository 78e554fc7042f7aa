# degree cocycle modulo (2,1)
target Z^2 mod 2 1
eta e (1,0)
eta f (0,0)
