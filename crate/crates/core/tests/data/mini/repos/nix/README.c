line 0 of nix.c
line 1 of nix.c
line 2 of nix.c
line 3 of nix.c
line 4 of nix.c
line 5 of nix.c
line 6 of nix.c
line 7 of nix.c
line 8 of nix.c
line 9 of nix.c
line 10 of nix.c
line 11 of nix.c
line 12 of nix.c
line 13 of nix.c
line 14 of nix.c
line 15 of nix.c
line 16 of nix.c
line 17 of nix.c
line 18 of nix.c
line 19 of nix.c
line 20 of nix.c
line 21 of nix.c
line 22 of nix.c
line 23 of nix.c
line 24 of nix.c
line 25 of nix.c
line 26 of nix.c
line 27 of nix.c
line 28 of nix.c
line 29 of nix.c
line 30 of nix.c
line 31 of nix.c
line 32 of nix.c
line 33 of nix.c
line 34 of nix.c
line 35 of nix.c
line 36 of nix.c
line 37 of nix.c
line 38 of nix.c
line 39 of nix.c
