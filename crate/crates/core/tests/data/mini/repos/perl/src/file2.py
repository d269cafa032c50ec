line 0 of perl.py
line 1 of perl.py
line 2 of perl.py
line 3 of perl.py
line 4 of perl.py
line 5 of perl.py
line 6 of perl.py
line 7 of perl.py
line 8 of perl.py
line 9 of perl.py
line 10 of perl.py
line 11 of perl.py
line 12 of perl.py
line 13 of perl.py
line 14 of perl.py
