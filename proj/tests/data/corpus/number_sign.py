num = float(input("Enter a Number: "))
if num >= 0:
    if num == 0:
        print("Zero ")
    else:
        print("Positive Number ")
else:
    print("Negative Number ")
print(" Done! ")
