group a
relator a^3
eta e a
eta f a^-1
